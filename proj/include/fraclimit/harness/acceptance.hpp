#pragma once

#include "fraclimit/harness/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace fraclimit::harness {

struct AcceptanceReport {
  /// One aggregated entry per criterion id 1..8.
  std::vector<CriterionResult> criteria;
  std::vector<ExperimentResult> experiments;

  bool passed() const;
};

/// Runs every experiment with its default configuration and folds criteria by id.
/// When `output_root` is set each experiment's report goes to <output_root>/<experiment>.
AcceptanceReport run_acceptance(const std::optional<std::filesystem::path>& output_root = std::nullopt,
                                bool parallel = true);

/// "PASS <id> <name>: <detail>" per criterion.
void print_acceptance(const AcceptanceReport& report, std::ostream& out);

}  // namespace fraclimit::harness
