#include "fraclimit/harness/acceptance.hpp"
#include "fraclimit/harness/config.hpp"
#include "fraclimit/harness/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace fh = fraclimit::harness;

int main(int argc, char** argv) {
  CLI::App app{"fraclimit: kinetic-to-fractional-diffusion limit experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  bool serial = false;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  run->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output_override, "override the output directory");
  run->add_flag("--serial", serial, "run the epsilon sweep sequentially");

  app.add_subcommand("list-experiments", "list experiment ids");

  std::string check_output;
  auto* check = app.add_subcommand("check", "run the acceptance suite, nonzero exit on any failure");
  check->add_option("-o,--output", check_output, "also write every experiment report under this directory");
  check->add_flag("--serial", serial, "run epsilon sweeps sequentially");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      fh::ExperimentConfig cfg = fh::load_config(config_path);
      if (!output_override.empty()) cfg.output_dir = output_override;
      if (serial) cfg.parallel = false;
      const fh::ExperimentResult r = fh::run_experiment(cfg);
      fh::emit_report(r, cfg.output_dir);
      for (const auto& c : r.criteria) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.id << ' ' << c.name << ": " << c.detail << '\n';
      }
      std::cout << "wrote " << cfg.output_dir.string() << " (" << r.runtime_seconds << " s)\n";
      return r.passed() ? 0 : 1;
    }
    if (app.got_subcommand("list-experiments")) {
      for (const auto& e : fh::list_experiments()) std::cout << e.id << "\t" << e.description << '\n';
      return 0;
    }
    std::optional<std::filesystem::path> out;
    if (!check_output.empty()) out = check_output;
    const auto report = fh::run_acceptance(out, !serial);
    fh::print_acceptance(report, std::cout);
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "fraclimit: " << e.what() << '\n';
    return 2;
  }
}
