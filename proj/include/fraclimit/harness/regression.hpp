#pragma once

#include <cstddef>
#include <vector>

namespace fraclimit::harness {

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit in log space.
  double residual = 0.0;
  /// Indices dropped because the error was zero or negative.
  std::vector<std::size_t> excluded;
  std::size_t used = 0;
};

/// Least-squares slope of log(error) against log(epsilon).
/// Throws std::invalid_argument for mismatched lengths, fewer than 3 entries,
/// non-positive epsilons, or fewer than 2 usable rows.
OrderFit empirical_order(const std::vector<double>& errors, const std::vector<double>& epsilons);

bool strictly_decreasing(const std::vector<double>& values);

}  // namespace fraclimit::harness
