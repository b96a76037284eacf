#include "fraclimit/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace fraclimit::harness {

using nlohmann::json;

void validate(const ExperimentConfig& cfg) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), cfg.experiment) == ids.end()) {
    throw std::invalid_argument("config: unknown experiment '" + cfg.experiment + "'");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 2.0)) throw std::invalid_argument("config: alpha must lie in (0, 2)");
  if (cfg.epsilons.size() < 3) {
    throw std::invalid_argument("config: epsilons needs at least 3 entries for order estimation");
  }
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    const double e = cfg.epsilons[i];
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("config: epsilons must lie in (0, 1)");
    if (i > 0 && !(e < cfg.epsilons[i - 1])) {
      throw std::invalid_argument("config: epsilons must be strictly decreasing");
    }
  }
  if (cfg.n_v < 8 || cfg.n_v % 2 != 0) throw std::invalid_argument("config: velocity.n_nodes must be even and >= 8");
  if (cfg.n_x < 8 || cfg.n_x % 2 != 0) throw std::invalid_argument("config: space.n_x must be even and >= 8");
  if (cfg.operator_n_x % cfg.n_x != 0) {
    throw std::invalid_argument("config: space.operator_n_x must be a multiple of space.n_x");
  }
  if (cfg.images < 1) throw std::invalid_argument("config: space.images must be positive");
  if (!(cfg.T > 0.0) || !(cfg.dt_max > 0.0)) throw std::invalid_argument("config: time.T and time.dt_max must be positive");
  for (std::size_t i = 0; i < cfg.snapshots.size(); ++i) {
    const double t = cfg.snapshots[i];
    if (t < 0.0 || t > cfg.T || (i > 0 && !(t > cfg.snapshots[i - 1]))) {
      throw std::invalid_argument("config: time.snapshots must be strictly increasing within [0, T]");
    }
  }
  if (cfg.wavenumbers.empty()) throw std::invalid_argument("config: test_function.wavenumbers is empty");
  if (cfg.rho_mean - std::abs(cfg.rho_amplitude) < 0.0) {
    throw std::invalid_argument("config: initial_density must be nonnegative");
  }
  if (cfg.core_radius <= 0.0) throw std::invalid_argument("config: equilibrium.core_radius must be positive");
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  ExperimentConfig cfg;
  if (j.contains("experiment")) cfg = default_config(j.at("experiment").get<std::string>());
  read(j, "alpha", cfg.alpha);
  read(j, "epsilons", cfg.epsilons);
  read(j, "parallel", cfg.parallel);
  read(j, "seed", cfg.seed);
  if (j.contains("equilibrium")) {
    const json& e = j.at("equilibrium");
    if (e.contains("family")) cfg.family = tail_family_from_string(e.at("family").get<std::string>());
    read(e, "core_radius", cfg.core_radius);
  }
  if (j.contains("velocity")) {
    const json& v = j.at("velocity");
    read(v, "n_nodes", cfg.n_v);
    if (v.contains("map")) cfg.map = velocity_map_from_string(v.at("map").get<std::string>());
  }
  if (j.contains("space")) {
    const json& s = j.at("space");
    read(s, "n_x", cfg.n_x);
    read(s, "operator_n_x", cfg.operator_n_x);
    read(s, "images", cfg.images);
  }
  if (j.contains("time")) {
    const json& t = j.at("time");
    read(t, "T", cfg.T);
    read(t, "dt_max", cfg.dt_max);
    read(t, "snapshots", cfg.snapshots);
  }
  if (j.contains("collision")) {
    const json& c = j.at("collision");
    if (c.contains("profile")) cfg.collision.profile = collision_profile_from_string(c.at("profile").get<std::string>());
    read(c, "amplitude", cfg.collision.amplitude);
    read(c, "nu1", cfg.collision.nu1);
    read(c, "nu2", cfg.collision.nu2);
    read(c, "blend_strength", cfg.collision.blend_strength);
    read(c, "blend_radius", cfg.collision.blend_radius);
  }
  if (j.contains("test_function")) read(j.at("test_function"), "wavenumbers", cfg.wavenumbers);
  if (j.contains("initial_density")) {
    const json& r = j.at("initial_density");
    read(r, "mean", cfg.rho_mean);
    read(r, "amplitude", cfg.rho_amplitude);
    read(r, "wavenumber", cfg.rho_wavenumber);
  }
  if (j.contains("operator_checks")) {
    const json& o = j.at("operator_checks");
    read(o, "alphas", cfg.alphas_checked);
    read(o, "random_slices", cfg.random_slices);
  }
  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    Thresholds& th = cfg.thresholds;
    read(t, "kappa_tolerance", th.kappa_tolerance);
    read(t, "gamma_quadrature_tolerance", th.gamma_quadrature_tolerance);
    read(t, "pv_sup_error", th.pv_sup_error);
    read(t, "leps_slope_min", th.leps_slope_min);
    read(t, "leps_slope_max", th.leps_slope_max);
    read(t, "leps_thm2_final_ratio", th.leps_thm2_final_ratio);
    read(t, "mass_drift", th.mass_drift);
    read(t, "g_slope_margin", th.g_slope_margin);
    read(t, "hydro_thm1_endpoint", th.hydro_thm1_endpoint);
    read(t, "hydro_thm2_endpoint", th.hydro_thm2_endpoint);
    read(t, "dirichlet_relative", th.dirichlet_relative);
    read(t, "reduction", th.reduction);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (o.contains("dir")) cfg.output_dir = o.at("dir").get<std::string>();
    read(o, "export_operator", cfg.export_operator);
  }
  validate(cfg);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  const Thresholds& th = cfg.thresholds;
  return json{
      {"experiment", cfg.experiment},
      {"alpha", cfg.alpha},
      {"epsilons", cfg.epsilons},
      {"parallel", cfg.parallel},
      {"seed", cfg.seed},
      {"equilibrium", {{"family", to_string(cfg.family)}, {"core_radius", cfg.core_radius}}},
      {"velocity", {{"n_nodes", cfg.n_v}, {"map", to_string(cfg.map)}}},
      {"space", {{"n_x", cfg.n_x}, {"operator_n_x", cfg.operator_n_x}, {"images", cfg.images}}},
      {"time", {{"T", cfg.T}, {"dt_max", cfg.dt_max}, {"snapshots", cfg.snapshots}}},
      {"collision",
       {{"profile", to_string(cfg.collision.profile)},
        {"amplitude", cfg.collision.amplitude},
        {"nu1", cfg.collision.nu1},
        {"nu2", cfg.collision.nu2},
        {"blend_strength", cfg.collision.blend_strength},
        {"blend_radius", cfg.collision.blend_radius}}},
      {"test_function", {{"wavenumbers", cfg.wavenumbers}}},
      {"initial_density",
       {{"mean", cfg.rho_mean}, {"amplitude", cfg.rho_amplitude}, {"wavenumber", cfg.rho_wavenumber}}},
      {"operator_checks", {{"alphas", cfg.alphas_checked}, {"random_slices", cfg.random_slices}}},
      {"thresholds",
       {{"kappa_tolerance", th.kappa_tolerance},
        {"gamma_quadrature_tolerance", th.gamma_quadrature_tolerance},
        {"pv_sup_error", th.pv_sup_error},
        {"leps_slope_min", th.leps_slope_min},
        {"leps_slope_max", th.leps_slope_max},
        {"leps_thm2_final_ratio", th.leps_thm2_final_ratio},
        {"mass_drift", th.mass_drift},
        {"g_slope_margin", th.g_slope_margin},
        {"hydro_thm1_endpoint", th.hydro_thm1_endpoint},
        {"hydro_thm2_endpoint", th.hydro_thm2_endpoint},
        {"dirichlet_relative", th.dirichlet_relative},
        {"reduction", th.reduction}}},
      {"output", {{"dir", cfg.output_dir.string()}, {"export_operator", cfg.export_operator}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.output_dir = std::filesystem::path("results") / experiment;
  if (experiment == "leps_convergence_thm1" || experiment == "hydro_limit_thm1") {
    cfg.collision = CollisionParams{};
    cfg.wavenumbers = {1, 2, 3};
  }
  if (experiment == "leps_convergence_thm2") cfg.wavenumbers = {1};
  if (experiment == "operator_consistency") {
    cfg.family = TailFamily::generalized_cauchy;
    cfg.collision.profile = CollisionProfile::velocity_blend;
    cfg.collision.amplitude = 0.5;
    cfg.n_v = 64;
  }
  return cfg;
}

}  // namespace fraclimit::harness
