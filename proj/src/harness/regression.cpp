#include "fraclimit/harness/regression.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fraclimit::harness {

OrderFit empirical_order(const std::vector<double>& errors, const std::vector<double>& epsilons) {
  if (errors.size() != epsilons.size()) throw std::invalid_argument("empirical_order: length mismatch");
  if (errors.size() < 3) throw std::invalid_argument("empirical_order: need at least 3 rows");
  OrderFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw std::invalid_argument("empirical_order: epsilons must be positive");
    if (!(errors[i] > 0.0)) {
      fit.excluded.push_back(i);
      continue;
    }
    lx.push_back(std::log(epsilons[i]));
    ly.push_back(std::log(errors[i]));
  }
  fit.used = lx.size();
  if (fit.used < 2) throw std::invalid_argument("empirical_order: fewer than 2 positive errors");
  Eigen::MatrixXd A(fit.used, 2);
  Eigen::VectorXd b(fit.used);
  for (std::size_t i = 0; i < fit.used; ++i) {
    A(i, 0) = lx[i];
    A(i, 1) = 1.0;
    b(i) = ly[i];
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
  fit.slope = coef(0);
  fit.intercept = coef(1);
  fit.residual = std::sqrt((A * coef - b).squaredNorm() / static_cast<double>(fit.used));
  return fit;
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

}  // namespace fraclimit::harness
