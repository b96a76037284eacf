#pragma once

#include "fraclimit/equilibria.hpp"
#include "fraclimit/velocity_grid.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace fraclimit::harness {

inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{
      "leps_convergence_thm1", "leps_convergence_thm2", "hydro_limit_thm1",
      "hydro_limit_thm2",      "apriori_estimates",     "operator_consistency"};
  return ids;
}

struct Thresholds {
  double kappa_tolerance = 1e-6;
  double gamma_quadrature_tolerance = 1e-8;
  double pv_sup_error = 1e-3;
  double leps_slope_min = 0.7;
  double leps_slope_max = 1.3;
  double leps_thm2_final_ratio = 0.25;
  double mass_drift = 1e-12;
  double g_slope_margin = 0.15;
  double hydro_thm1_endpoint = 0.10;
  double hydro_thm2_endpoint = 0.15;
  double dirichlet_relative = 1e-8;
  double reduction = 1e-10;
};

struct ExperimentConfig {
  std::string experiment = "leps_convergence_thm1";
  double alpha = 1.0;
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};

  TailFamily family = TailFamily::exact_tail;
  double core_radius = 1.0;

  int n_v = 128;
  VelocityMap map = VelocityMap::automatic;

  int n_x = 64;
  int operator_n_x = 256;
  int images = 64;

  double T = 1.0;
  double dt_max = 0.01;
  std::vector<double> snapshots{0.0, 0.25, 0.5, 0.75, 1.0};

  CollisionParams collision{CollisionProfile::smooth_nu0, 0.5, 0.25, 2.5, 0.2, 5.0};

  std::vector<int> wavenumbers{1, 2, 3};
  double rho_mean = 1.0;
  double rho_amplitude = 0.5;
  int rho_wavenumber = 1;

  std::vector<double> alphas_checked{0.5, 1.0, 1.5};
  int random_slices = 100;
  std::uint64_t seed = 20240607;

  Thresholds thresholds;
  std::filesystem::path output_dir = "results";
  bool parallel = true;
  bool export_operator = false;
};

/// Throws std::invalid_argument naming the offending key.
void validate(const ExperimentConfig& cfg);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Defaults tuned for the named experiment (used by `check` and list-experiments).
ExperimentConfig default_config(const std::string& experiment);

}  // namespace fraclimit::harness
