#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fraclimit::harness {

/// A numeric CSV table with a fixed header.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  std::string experiment;
  nlohmann::json config;
  std::map<std::string, Table> tables;
  std::vector<CriterionResult> criteria;
  nlohmann::json metrics = nlohmann::json::object();
  double runtime_seconds = 0.0;

  bool passed() const;
};

/// Documented column sets of the emitted CSV files.
namespace schema {
inline const std::vector<std::string> convergence{"epsilon", "k", "sup_error", "l2_error"};
inline const std::vector<std::string> modes{"t", "k", "re_rho_hat", "im_rho_hat"};
inline const std::vector<std::string> monitors{"t", "mass", "f_norm", "g_norm_accum"};
inline const std::vector<std::string> snapshots{"t", "x", "rho_eps", "rho_limit"};
inline const std::vector<std::string> hydro{"epsilon", "l2_error", "relative_error"};
inline const std::vector<std::string> apriori{"epsilon", "operator", "g_norm_accum", "max_mass_drift",
                                               "max_f_norm_increase", "max_rho_over_f0"};
inline const std::vector<std::string> operator_checks{"alpha", "k", "pv", "multiplier", "abs_error"};
}  // namespace schema

std::string format_number(double value);
void write_csv(const Table& table, const std::filesystem::path& path);
Table read_csv(const std::filesystem::path& path);

/// summary.json: experiment, config echo, metrics, criteria, pass flag, runtime.
nlohmann::json summary_json(const ExperimentResult& result);

/// Writes <dir>/<table>.csv for every table and <dir>/summary.json. I/O errors carry the path.
void emit_report(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace fraclimit::harness
