#include "fraclimit/fractional.hpp"

#include "fraclimit/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fraclimit {

double power_exponential_integral(double p) {
  return power_exponential_rule(p).weights.sum();
}

double c_N_alpha_closed_form(int dim, double alpha) {
  return std::pow(2.0, alpha) * std::tgamma(0.5 * (dim + alpha)) /
         (std::pow(std::numbers::pi, 0.5 * dim) * std::abs(std::tgamma(-0.5 * alpha)));
}

PvStencil::PvStencil(int n, double alpha, int images) : n_(n), alpha_(alpha), images_(images) {
  if (n < 8) throw std::invalid_argument("PvStencil: need at least 8 grid points");
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("PvStencil: alpha outside (0, 2)");
  if (images < 1) throw std::invalid_argument("PvStencil: need at least one kernel image");
  const int L = images * n;
  const double h = spacing();
  const double scale = std::pow(h, -alpha);
  c_ = Eigen::VectorXd::Zero(L + 2);

  // [0, h]: D ~ D2 w^2 + D4 w^4 fitted through D(h), D(2h).
  const double a2 = scale / (2.0 - alpha) / 12.0;
  const double a4 = scale / (4.0 - alpha) / 12.0;
  c_(1) += 16.0 * a2 - 4.0 * a4;
  c_(2) += -a2 + a4;

  // [l h, (l + 1) h]: cubic through l - 1 .. l + 2 against tau^{-1-alpha}, tau = w / h.
  const QuadratureRule gl = gauss_legendre(12, 0.0, 1.0);
  for (int l = 1; l < L; ++l) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (Eigen::Index q = 0; q < gl.size(); ++q) {
      const double s = gl.nodes(q);  // tau = l + s, nodes at s = -1, 0, 1, 2
      const double wt = gl.weights(q) * std::pow(l + s, -1.0 - alpha);
      acc[0] += wt * (-s * (s - 1.0) * (s - 2.0) / 6.0);
      acc[1] += wt * ((s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0);
      acc[2] += wt * (-(s + 1.0) * s * (s - 2.0) / 2.0);
      acc[3] += wt * ((s + 1.0) * s * (s - 1.0) / 6.0);
    }
    for (int p = 0; p < 4; ++p) {
      const int node = l - 1 + p;
      if (node >= 1) c_(node) += scale * acc[p];
    }
  }
}

double PvStencil::tail_weight() const { return 2.0 * std::pow(radius(), -alpha_) / alpha_; }

Eigen::VectorXd PvStencil::folded() const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n_);
  for (int l = 1; l < c_.size(); ++l) s(l % n_) += c_(l);
  return s;
}

namespace {

// (A rho)_i = sum_l c_l (2 rho_i - rho_{i+l} - rho_{i-l}) + T (rho_i - mean rho).
Eigen::VectorXd apply_pv_constant(const PvStencil& st, const Eigen::VectorXd& rho) {
  const int n = st.size();
  const Eigen::VectorXd s = st.folded();
  const double total = s.sum();
  const double mean = rho.mean();
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 2.0 * total * rho(i);
    for (int m = 0; m < n; ++m) {
      if (s(m) == 0.0) continue;
      acc -= s(m) * (rho((i + m) % n) + rho(((i - m) % n + n) % n));
    }
    out(i) = acc + st.tail_weight() * (rho(i) - mean);
  }
  return out;
}

// Transverse factor int_{R^{N-1}} (1 + |u|^2)^{-(N+alpha)/2} du.
double transverse_factor(int dim, double alpha) {
  if (dim == 1) return 1.0;
  // u = tan(theta): |S^{N-2}| int_0^{pi/2} cos^alpha(theta) sin^{N-2}(theta) d theta
  const double sphere = dim == 2 ? 2.0 : unit_sphere_area(dim - 1);
  const QuadratureRule rule = gauss_legendre(64, 0.0, 0.5 * std::numbers::pi);
  return sphere * rule.apply([&](double t) {
    return std::pow(std::cos(t), alpha) * std::pow(std::sin(t), dim - 2);
  });
}

}  // namespace

FractionalConstant calibrate_cNalpha(int dim, double alpha) {
  if (dim < 1) throw std::domain_error("calibrate_cNalpha: dim must be at least 1");
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("calibrate_cNalpha: alpha outside (0, 2)");
  const int n = 256;
  const PvStencil st(n, alpha, 64);
  const double transverse = transverse_factor(dim, alpha);
  double num = 0.0, den = 0.0;
  std::vector<double> ratios;
  for (int k = 1; k <= 3; ++k) {
    const DensityField rho = DensityField::from_function(n, [k](double x) { return std::cos(k * x); });
    const Eigen::VectorXd out = apply_pv_constant(st, rho.values());
    const double r = transverse * (to_spectrum(out)(k).real() / rho.mode(k).real());
    ratios.push_back(r);
    num += std::pow(k, alpha) * r;
    den += r * r;
  }
  FractionalConstant fc;
  fc.dim = dim;
  fc.alpha = alpha;
  fc.c_N_alpha = c_N_alpha_closed_form(dim, alpha);
  fc.calibrated = num / den;
  double res = 0.0;
  for (int k = 1; k <= 3; ++k) {
    res = std::max(res, std::abs(fc.calibrated * ratios[k - 1] / std::pow(k, alpha) - 1.0));
  }
  fc.calibration_residual = std::max(res, std::abs(fc.calibrated / fc.c_N_alpha - 1.0));
  if (fc.calibration_residual > 0.01) {
    std::ostringstream os;
    os << "calibrate_cNalpha: calibrated " << fc.calibrated << " vs closed form " << fc.c_N_alpha
       << " (N = " << dim << ", alpha = " << alpha << "), residual " << fc.calibration_residual;
    throw std::runtime_error(os.str());
  }
  return fc;
}

FractionalConstant make_fractional_constant(const EquilibriumSpec& spec) {
  FractionalConstant fc = calibrate_cNalpha(spec.dim(), spec.alpha());
  fc.kappa = spec.kappa0() / fc.c_N_alpha * power_exponential_integral(spec.alpha());
  return fc;
}

DensityField frac_laplacian_multiplier(const DensityField& rho, double alpha) {
  const PeriodicGrid grid = rho.grid();
  Eigen::VectorXcd c = rho.spectrum();
  for (int j = 0; j < grid.size(); ++j) {
    c(j) *= std::pow(std::abs(static_cast<double>(grid.wavenumber(j))), alpha);
  }
  return DensityField::from_spectrum(c);
}

double pv_tail_bound(const DensityField& rho, double gamma_max, double alpha, int images) {
  const double dev = (rho.values().array() - rho.values().mean()).abs().maxCoeff();
  return 2.0 * kTwoPi * gamma_max * dev * std::pow(kTwoPi * images, -1.0 - alpha);
}

namespace {

void check_tail(double bound, double tolerance, double gamma_max, double dev, double alpha) {
  if (bound <= tolerance) return;
  const double need = std::pow(2.0 * kTwoPi * gamma_max * dev / tolerance, 1.0 / (1.0 + alpha)) / kTwoPi;
  std::ostringstream os;
  os << "PV tail bound " << bound << " exceeds tolerance " << tolerance << "; need at least "
     << static_cast<int>(std::ceil(need)) << " kernel images";
  throw std::runtime_error(os.str());
}

}  // namespace

DensityField frac_laplacian_pv(const DensityField& rho, double alpha, const FractionalConstant& c,
                               const PvOptions& opts) {
  const double dev = (rho.values().array() - rho.values().mean()).abs().maxCoeff();
  check_tail(c.c_N_alpha * pv_tail_bound(rho, 1.0, alpha, opts.images), opts.tail_tolerance,
             c.c_N_alpha, dev, alpha);
  const PvStencil st(rho.size(), alpha, opts.images);
  return DensityField(rho.size(), c.c_N_alpha * apply_pv_constant(st, rho.values()));
}

GammaKernel::GammaKernel(const CollisionModel& model, double alpha, int n)
    : model_(model), alpha_(alpha), gamma_alpha_(std::tgamma(alpha + 1.0)) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("GammaKernel: alpha outside (0, 2)");
  const double nu1 = model.nu1(), nu2 = model.nu2();
  gamma1_ = nu1 * nu1 * gamma_alpha_ / std::pow(nu2, alpha + 1.0);
  gamma2_ = nu2 * nu2 * gamma_alpha_ / std::pow(nu1, alpha + 1.0);
  const PeriodicGrid grid(n);
  values_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) values_(i, j) = (*this)(grid.point(i), grid.point(j));
  }
}

double GammaKernel::operator()(double x, double y) const {
  const double A = model_.segment_mean(x, y);
  return model_.nu0(x) * model_.nu0(y) * gamma_alpha_ / std::pow(A, alpha_ + 1.0);
}

double GammaKernel::far_bound(double r) const {
  const double a = model_.nu0_max() - 1.0;
  const double lo = std::max(model_.nu0_min(), 1.0 - 2.0 * a / r);
  return model_.nu0_max() * model_.nu0_max() * gamma_alpha_ / std::pow(lo, alpha_ + 1.0);
}

GammaKernel build_gamma_kernel(const CollisionModel& model, double alpha, int n) {
  return GammaKernel(model, alpha, n);
}

Eigen::MatrixXd assemble_L_operator(const GammaKernel& kernel, const PvOptions& opts,
                                    double* defect) {
  const int n = kernel.size();
  const PvStencil st(n, kernel.alpha(), opts.images);
  const PeriodicGrid grid(n);
  const double h = grid.spacing();
  const Eigen::VectorXd& c = st.coefficients();
  const CollisionModel& model = kernel.model();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.point(i);
    for (int l = 1; l < c.size(); ++l) {
      const double gp = c(l) * kernel(x, x + l * h);
      const double gm = c(l) * kernel(x, x - l * h);
      A(i, i) += gp + gm;
      A(i, (i + l) % n) -= gp;
      A(i, ((i - l) % n + n) % n) -= gm;
    }
  }
  // |w| > R: gamma -> nu0(x) nu0(y) Gamma(alpha + 1) / nu0_mean^{alpha + 1}.
  const double mean = model.nu0_mean();
  const double tail = st.tail_weight() * kernel.gamma_alpha() / std::pow(mean, kernel.alpha() + 1.0);
  Eigen::VectorXd nu(n);
  for (int i = 0; i < n; ++i) nu(i) = model.nu0(grid.point(i));
  A.diagonal() += tail * mean * nu;
  A.noalias() -= (tail / n) * nu * nu.transpose();

  const double raw = (A - A.transpose()).cwiseAbs().maxCoeff() / A.cwiseAbs().maxCoeff();
  if (defect) *defect = raw;
  if (raw >= 1e-6) {
    std::ostringstream os;
    os << "assemble_L_operator: symmetry defect " << raw << " before symmetrization";
    throw std::runtime_error(os.str());
  }
  return 0.5 * (A + A.transpose());
}

DensityField apply_L_operator(const DensityField& rho, const GammaKernel& kernel,
                              const PvOptions& opts) {
  if (rho.size() != kernel.size()) throw std::invalid_argument("apply_L_operator: grid mismatch");
  const double gmax = kernel.far_bound(kTwoPi * opts.images);
  const double dev = (rho.values().array() - rho.values().mean()).abs().maxCoeff();
  check_tail(pv_tail_bound(rho, gmax, kernel.alpha(), opts.images), opts.tail_tolerance, gmax, dev,
             kernel.alpha());
  const Eigen::MatrixXd A = assemble_L_operator(kernel, opts);
  return DensityField(rho.size(), A * rho.values());
}

std::vector<DensityField> solve_fractional_constant(const DensityField& rho0, double kappa,
                                                    double alpha, const std::vector<double>& times) {
  const PeriodicGrid grid = rho0.grid();
  const Eigen::VectorXcd c0 = rho0.spectrum();
  std::vector<DensityField> out;
  out.reserve(times.size());
  for (double t : times) {
    Eigen::VectorXcd c = c0;
    for (int j = 0; j < grid.size(); ++j) {
      const double k = std::abs(static_cast<double>(grid.wavenumber(j)));
      c(j) *= std::exp(-kappa * std::pow(k, alpha) * t);
    }
    out.push_back(DensityField::from_spectrum(c));
  }
  return out;
}

std::vector<DensityField> solve_fractional_kernel(const DensityField& rho0,
                                                  const Eigen::MatrixXd& op, double kappa0,
                                                  const std::vector<double>& times) {
  if (op.rows() != rho0.size() || op.cols() != rho0.size()) {
    throw std::invalid_argument("solve_fractional_kernel: operator size mismatch");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op);
  if (eig.info() != Eigen::Success) throw std::runtime_error("solve_fractional_kernel: eigensolver failed");
  const Eigen::VectorXd coeff = eig.eigenvectors().transpose() * rho0.values();
  std::vector<DensityField> out;
  out.reserve(times.size());
  for (double t : times) {
    const Eigen::VectorXd decay = (-kappa0 * t * eig.eigenvalues().array().max(0.0)).exp();
    out.emplace_back(rho0.size(), eig.eigenvectors() * decay.cwiseProduct(coeff));
  }
  return out;
}

namespace {

constexpr char kMagic[4] = {'F', 'L', 'O', 'P'};

template <typename T>
void put_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  is.read(reinterpret_cast<char*>(bytes), sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_operator_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& op, double alpha) {
  if (op.rows() != op.cols()) throw std::invalid_argument("write_operator_matrix: matrix not square");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_operator_matrix: cannot open " + path.string());
  os.write(kMagic, 4);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(op.rows()));
  put_le<double>(os, alpha);
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.cols(); ++j) put_le<double>(os, op(i, j));
  }
  if (!os) throw std::runtime_error("write_operator_matrix: write failed for " + path.string());
}

Eigen::MatrixXd read_operator_matrix(const std::filesystem::path& path, double* alpha) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_operator_matrix: cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("read_operator_matrix: bad magic in " + path.string());
  }
  const auto n = get_le<std::uint32_t>(is);
  const double a = get_le<double>(is);
  Eigen::MatrixXd op(n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) op(i, j) = get_le<double>(is);
  }
  if (!is) throw std::runtime_error("read_operator_matrix: truncated file " + path.string());
  if (alpha) *alpha = a;
  return op;
}

}  // namespace fraclimit
