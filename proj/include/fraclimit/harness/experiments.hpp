#pragma once

#include "fraclimit/harness/config.hpp"
#include "fraclimit/harness/report.hpp"
#include "fraclimit/kinetic.hpp"

#include <string>
#include <vector>

namespace fraclimit::harness {

struct ExperimentInfo {
  std::string id;
  std::string description;
};

const std::vector<ExperimentInfo>& list_experiments();

/// Dispatches on cfg.experiment. Does not write files.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_leps_convergence(const ExperimentConfig& cfg);
ExperimentResult run_hydro_limit(const ExperimentConfig& cfg);
ExperimentResult run_apriori_estimates(const ExperimentConfig& cfg);
ExperimentResult run_operator_consistency(const ExperimentConfig& cfg);

/// Step-to-step invariants of one kinetic run, all relative to the initial values.
struct InvariantReport {
  double max_mass_drift = 0.0;       // |mass(t) - mass(0)| / mass(0)
  double max_f_norm_increase = 0.0;  // max (f_{n+1} - f_n) / f_0, <= 0 when non-increasing
  double max_rho_over_f0 = 0.0;      // max ||rho(t)||_{L2} / ||f_0||
  int first_violation_step = -1;
};

InvariantReport check_invariants(const KineticRun& run, double mass_tolerance);

EquilibriumSpec make_spec(const ExperimentConfig& cfg);
VelocitySpace make_velocity_space(const ExperimentConfig& cfg);
/// min(dt_max, eps^alpha)
double time_step(const ExperimentConfig& cfg, double epsilon);

}  // namespace fraclimit::harness
