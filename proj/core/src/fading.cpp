// SPDX-License-Identifier: Apache-2.0
#include "swmimo/fading.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "swmimo/constants.hpp"

namespace swmimo {

namespace {

// Gauss-Kronrod 7-15 pair on [-1, 1]; positive abscissae only, the rule is
// symmetric. Odd-index Kronrod nodes are the embedded Gauss nodes.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  Complex integral;
  double error;
};

template <typename F>
PanelResult kronrod_panel(const F& fn, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex k15(0.0, 0.0), g7(0.0, 0.0);
  for (int i = 0; i < 8; ++i) {
    const double x = kKronrodNodes[i];
    Complex v = fn(mid + half * x);
    if (x != 0.0) v += fn(mid - half * x);
    k15 += kKronrodWeights[i] * v;
    if (i % 2 == 1) g7 += kGaussWeights[i / 2] * v;
  }
  PanelResult r;
  r.integral = half * k15;
  r.error = std::abs(half * (k15 - g7));
  return r;
}

template <typename F>
Complex adaptive_kronrod(const F& fn, double a, double b, double target,
                         double hard_limit, const std::string& label) {
  struct Panel {
    double a, b;
  };
  std::vector<Panel> stack{{a, b}};
  Complex total(0.0, 0.0);
  double err_total = 0.0;
  const double width = b - a;
  const double min_width = width * 0x1.0p-40;
  std::size_t evals = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    if (++evals > 100000)
      throw std::runtime_error("quadrature did not converge for " + label);
    const PanelResult r = kronrod_panel(fn, p.a, p.b);
    const double local_target = target * (p.b - p.a) / width;
    if (r.error <= local_target || (p.b - p.a) <= min_width) {
      total += r.integral;
      err_total += r.error;
    } else {
      const double mid = 0.5 * (p.a + p.b);
      stack.push_back({p.a, mid});
      stack.push_back({mid, p.b});
    }
  }
  if (err_total > hard_limit)
    throw std::runtime_error("quadrature error estimate " + std::to_string(err_total) +
                             " exceeds limit for " + label);
  return total;
}

}  // namespace

Complex spatial_correlation_entry(int i, int j, double f, const SpatialCorrModel& model) {
  if (f <= 0.0) throw std::invalid_argument("spatial_correlation_entry: f must be positive");
  if (model.asd < 0.0) throw std::invalid_argument("spatial_correlation_entry: negative asd");
  if (model.spacing <= 0.0)
    throw std::invalid_argument("spatial_correlation_entry: spacing must be positive");
  const double lag = static_cast<double>(j - i);
  if (lag == 0.0) return Complex(1.0, 0.0);  // unit diagonal, no quadrature residual
  const double c1 = 2.0 * kPi * model.spacing * (f / kSpeedOfLight) * lag;
  if (model.asd == 0.0)  // point scatterer exactly at the central angle
    return std::polar(1.0, c1 * std::sin(model.central_angle));
  const double b = model.asd / std::sqrt(2.0);
  const double norm = 1.0 / (2.0 * b * (1.0 - std::exp(-kPi / b)));
  const auto integrand = [&](double omega) {
    const double pdf = norm * std::exp(-std::abs(omega) / b);
    return pdf * std::polar(1.0, c1 * std::sin(model.central_angle + omega));
  };
  const std::string label = "spatial correlation (i=" + std::to_string(i) +
                            ", j=" + std::to_string(j) + ", f=" + std::to_string(f) + ")";
  // The density has a kink at omega = 0; integrate each side separately.
  const Complex left = adaptive_kronrod(integrand, -kPi, 0.0, 0.5e-9, 0.5e-8, label);
  const Complex right = adaptive_kronrod(integrand, 0.0, kPi, 0.5e-9, 0.5e-8, label);
  return left + right;
}

ComplexMatrix spatial_correlation_matrix(std::size_t n, double f, const SpatialCorrModel& model) {
  const Eigen::Index m = static_cast<Eigen::Index>(n);
  ComplexMatrix r(m, m);
  // Toeplitz: one quadrature per lag, not per entry.
  std::vector<Complex> row(n);
  for (std::size_t lag = 0; lag < n; ++lag)
    row[lag] = spatial_correlation_entry(0, static_cast<int>(lag), f, model);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      r(i, j) = j >= i ? row[static_cast<std::size_t>(j - i)]
                       : std::conj(row[static_cast<std::size_t>(i - j)]);
  return r;
}

double asd_schedule(double f, const FrequencyGrid& grid, double asd_low, double asd_high) {
  const double span = grid.f_stop() - grid.f_start;
  if (span <= 0.0) throw std::invalid_argument("asd_schedule: degenerate grid");
  double t = (f - grid.f_start) / span;
  if (t < -1e-9 || t > 1.0 + 1e-9)
    throw std::invalid_argument("asd_schedule: frequency outside the grid span");
  t = std::min(std::max(t, 0.0), 1.0);
  return asd_low + t * (asd_high - asd_low);
}

double jakes_entry(long lag, double delta_f, double tau_rms) {
  return 1.0 / (1.0 + 2.0 * kPi * delta_f * std::abs(static_cast<double>(lag)) * tau_rms);
}

RealMatrix jakes_matrix(std::size_t n, double delta_f, double tau_rms) {
  const Eigen::Index m = static_cast<Eigen::Index>(n);
  RealMatrix r(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) r(i, j) = jakes_entry(j - i, delta_f, tau_rms);
  return r;
}

FreqCorrGenerator::FreqCorrGenerator(std::size_t block_len, double delta_f, double tau_rms)
    : n_(block_len) {
  if (block_len == 0) throw std::invalid_argument("FreqCorrGenerator: block_len must be positive");
  if (delta_f <= 0.0) throw std::invalid_argument("FreqCorrGenerator: delta_f must be positive");
  if (tau_rms <= 0.0)
    throw std::invalid_argument(
        "FreqCorrGenerator: tau_rms must be positive (zero delay spread makes the "
        "correlation matrix singular)");
  const Eigen::Index n = static_cast<Eigen::Index>(n_);
  const RealMatrix big = jakes_matrix(2 * n_, delta_f, tau_rms);
  const ComplexMatrix u = cholesky_upper(big.cast<Complex>());
  const ComplexMatrix u1 = u.topLeftCorner(n, n);
  const ComplexMatrix u2 = u.topRightCorner(n, n);
  u1h_ = u1.adjoint();
  u3h_ = u.bottomRightCorner(n, n).adjoint();
  // A U1^H = U2^H, i.e. A = U2^H (U1^H)^-1; U1^H is lower triangular.
  a_ = u1h_.triangularView<Eigen::Lower>()
           .transpose()
           .solve(u2.adjoint().transpose())
           .transpose();
  r1_ = big.topLeftCorner(n, n);
  state_ = ComplexVector::Zero(n);
}

ComplexVector FreqCorrGenerator::next_block(const ComplexVector& u) {
  if (u.size() != static_cast<Eigen::Index>(n_))
    throw std::invalid_argument("FreqCorrGenerator: draw vector has wrong length");
  if (!started_) {
    state_ = u1h_ * u;
    started_ = true;
  } else {
    state_ = a_ * state_ + u3h_ * u;
  }
  return state_;
}

void FreqCorrGenerator::reset() {
  started_ = false;
  state_.setZero();
}

double KFactorModel::mean_db(double f_ghz) const {
  if (f_ghz <= 0.0) throw std::invalid_argument("KFactorModel: f_ghz must be positive");
  return mu_slope * std::log10(f_ghz) + mu_intercept;
}

double KFactorModel::var_db(double f_ghz) const {
  if (f_ghz <= 0.0) throw std::invalid_argument("KFactorModel: f_ghz must be positive");
  const double v = var_slope * std::log10(f_ghz) + var_intercept;
  return std::max(v, 0.0);
}

double KFactorModel::k_linear(double f_hz, double z) const {
  const double f_ghz = f_hz / 1e9;
  const double k_db = mean_db(f_ghz) + z * std::sqrt(var_db(f_ghz));
  return std::pow(10.0, k_db / 10.0);
}

std::vector<ComplexMatrix> generate_unit_field(std::size_t n_r, std::size_t n_t,
                                               std::size_t n_freq, double delta_f,
                                               const FadingStreamParams& params,
                                               std::uint64_t trial) {
  if (n_r == 0 || n_t == 0 || n_freq == 0)
    throw std::invalid_argument("generate_unit_field: empty dimensions");
  const std::size_t n = params.block_len;
  FreqCorrGenerator gen(n, delta_f, params.tau_rms);
  std::vector<ComplexMatrix> field(n_freq, ComplexMatrix(static_cast<Eigen::Index>(n_r),
                                                         static_cast<Eigen::Index>(n_t)));
  ComplexVector u(static_cast<Eigen::Index>(n));
  const std::size_t n_blocks = (n_freq + n - 1) / n;
  for (std::size_t i = 0; i < n_r; ++i) {
    for (std::size_t j = 0; j < n_t; ++j) {
      Rng rng = Rng::stream(params.master_seed, trial, i, j);
      gen.reset();
      for (std::size_t k = 0; k < n_blocks; ++k) {
        for (std::size_t m = 0; m < n; ++m) u(static_cast<Eigen::Index>(m)) = rng.next_cnormal();
        const ComplexVector h = gen.next_block(u);
        for (std::size_t m = 0; m < n; ++m) {
          const std::size_t l = k * n + m;
          if (l >= n_freq) break;
          field[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              h(static_cast<Eigen::Index>(m));
        }
      }
    }
  }
  return field;
}

std::vector<ComplexMatrix> color_field(const std::vector<ComplexMatrix>& unit_field,
                                       const std::vector<ComplexMatrix>& r_factors,
                                       const std::vector<ComplexMatrix>& t_factors) {
  if (unit_field.size() != r_factors.size() || unit_field.size() != t_factors.size())
    throw std::invalid_argument("color_field: factor count does not match field length");
  std::vector<ComplexMatrix> out(unit_field.size());
  for (std::size_t l = 0; l < unit_field.size(); ++l)
    out[l] = r_factors[l] * unit_field[l] * t_factors[l];
  return out;
}

std::vector<ComplexMatrix> generate_scattered_field(
    std::size_t n_r, std::size_t n_t, const FrequencyGrid& grid,
    const std::vector<ComplexMatrix>& spatial_r_factors,
    const std::vector<ComplexMatrix>& spatial_t_factors,
    const FadingStreamParams& params, std::uint64_t trial) {
  return color_field(generate_unit_field(n_r, n_t, grid.count, grid.delta_f, params, trial),
                     spatial_r_factors, spatial_t_factors);
}

}  // namespace swmimo
