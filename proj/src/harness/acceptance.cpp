#include "fraclimit/harness/acceptance.hpp"

#include "fraclimit/harness/config.hpp"
#include "fraclimit/harness/experiments.hpp"

#include <map>
#include <ostream>

namespace fraclimit::harness {

namespace {

const char* const kCriterionNames[] = {
    "kappa consistency",
    "fractional operator consistency",
    "L^eps convergence, constant coefficients",
    "L^eps convergence, space-dependent nu0",
    "a priori estimates",
    "hydrodynamic limit, fractional Laplacian",
    "hydrodynamic limit, kernel operator",
    "structural identities",
};

}  // namespace

bool AcceptanceReport::passed() const {
  for (const auto& c : criteria) {
    if (!c.passed) return false;
  }
  return !criteria.empty();
}

AcceptanceReport run_acceptance(const std::optional<std::filesystem::path>& output_root, bool parallel) {
  AcceptanceReport report;
  std::map<int, CriterionResult> folded;
  for (const auto& id : experiment_ids()) {
    ExperimentConfig cfg = default_config(id);
    cfg.parallel = parallel;
    ExperimentResult r = run_experiment(cfg);
    if (output_root) emit_report(r, *output_root / id);
    for (const auto& c : r.criteria) {
      auto [it, fresh] = folded.try_emplace(c.id, c);
      if (fresh) {
        it->second.detail = "[" + id + "] " + c.detail;
        continue;
      }
      it->second.passed = it->second.passed && c.passed;
      it->second.detail += " | [" + id + "] " + c.detail;
    }
    report.experiments.push_back(std::move(r));
  }
  for (int id = 1; id <= 8; ++id) {
    auto it = folded.find(id);
    if (it == folded.end()) {
      report.criteria.push_back({id, kCriterionNames[id - 1], false, "not evaluated"});
    } else {
      it->second.name = kCriterionNames[id - 1];
      report.criteria.push_back(it->second);
    }
  }
  return report;
}

void print_acceptance(const AcceptanceReport& report, std::ostream& out) {
  for (const auto& c : report.criteria) {
    out << (c.passed ? "PASS " : "FAIL ") << c.id << ' ' << c.name << ": " << c.detail << '\n';
  }
}

}  // namespace fraclimit::harness
