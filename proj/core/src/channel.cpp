// SPDX-License-Identifier: Apache-2.0
#include "swmimo/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "swmimo/constants.hpp"

namespace swmimo {

namespace {

constexpr double kLosLimit = 1e8;
constexpr double kRayleighLimit = 1e-8;

void check_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

}  // namespace

ComplexVector steering_vector(std::size_t n, double spacing, double f, double theta) {
  if (n == 0) throw std::invalid_argument("steering_vector: n must be positive");
  if (spacing <= 0.0 || f <= 0.0)
    throw std::invalid_argument("steering_vector: spacing and f must be positive");
  const double phase_step = 2.0 * kPi * spacing * (f / kSpeedOfLight) * std::sin(theta);
  ComplexVector a(static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m)
    a(static_cast<Eigen::Index>(m)) = std::polar(1.0, phase_step * static_cast<double>(m));
  return a;
}

PathGain path_gain(double f, double k_linear, double g_t, double g_r, double d, double gamma) {
  if (f <= 0.0 || d <= 0.0) throw std::invalid_argument("path_gain: f and d must be positive");
  if (k_linear <= 0.0) throw std::invalid_argument("path_gain: K must be positive");
  if (g_t <= 0.0 || g_r <= 0.0) throw std::invalid_argument("path_gain: gains must be positive");
  PathGain g;
  const double amp = kSpeedOfLight / (2.0 * kPi * f * std::pow(d, gamma / 2.0));
  g.beta_los = g_t * g_r * amp * amp;
  if (k_linear >= kLosLimit || k_linear <= kRayleighLimit)
    g.beta = g.beta_los;
  else
    g.beta = g.beta_los * (1.0 + 1.0 / k_linear);
  return g;
}

RicianWeights rician_weights(double k_linear) {
  if (k_linear <= 0.0) throw std::invalid_argument("rician_weights: K must be positive");
  if (k_linear >= kLosLimit) return {1.0, 0.0};
  if (k_linear <= kRayleighLimit) return {0.0, 1.0};
  return {std::sqrt(k_linear / (k_linear + 1.0)), std::sqrt(1.0 / (k_linear + 1.0))};
}

ComplexMatrix assemble_h_mimo(double k_linear, double beta, const ComplexVector& a_r,
                              const ComplexVector& a_t, const ComplexMatrix& r_r_sqrt,
                              const ComplexMatrix& u_field, const ComplexMatrix& r_t_sqrt) {
  if (u_field.rows() != a_r.size() || u_field.cols() != a_t.size() ||
      r_r_sqrt.rows() != a_r.size() || r_t_sqrt.rows() != a_t.size())
    throw std::invalid_argument("assemble_h_mimo: dimension mismatch");
  const RicianWeights w = rician_weights(k_linear);
  const double s = std::sqrt(beta);
  return s * (w.los * (a_r * a_t.adjoint()) +
              w.scattered * (r_r_sqrt * u_field * r_t_sqrt));
}

ComplexVector equivalent_rx_steering(const ComplexMatrix& whitener, const ComplexMatrix& p,
                                     const ComplexVector& a_r) {
  if (whitener.cols() != p.rows() || p.cols() != a_r.size())
    throw std::invalid_argument("equivalent_rx_steering: dimension mismatch");
  return whitener * (p * a_r);
}

ComplexVector equivalent_tx_steering(const ComplexMatrix& q, const ComplexVector& a_t) {
  if (q.rows() != a_t.size())
    throw std::invalid_argument("equivalent_tx_steering: dimension mismatch");
  return q.adjoint() * a_t;
}

ComplexMatrix equivalent_rx_corr(const ComplexMatrix& whitener, const ComplexMatrix& p,
                                 const ComplexMatrix& r_r) {
  check_square(r_r, "equivalent_rx_corr");
  const ComplexMatrix wp = whitener * p;
  ComplexMatrix c = wp * r_r * wp.adjoint();
  return 0.5 * (c + c.adjoint().eval());
}

ComplexMatrix equivalent_tx_corr(const ComplexMatrix& q, const ComplexMatrix& r_t) {
  check_square(r_t, "equivalent_tx_corr");
  ComplexMatrix c = q.adjoint() * r_t * q;
  return 0.5 * (c + c.adjoint().eval());
}

ComplexMatrix equivalent_rx_factor(const ComplexMatrix& whitener, const ComplexMatrix& p,
                                   const ComplexMatrix& r_r_sqrt) {
  return whitener * p * r_r_sqrt;
}

ComplexMatrix equivalent_tx_factor(const ComplexMatrix& r_t_sqrt, const ComplexMatrix& q) {
  return r_t_sqrt * q;
}

ComplexMatrix whitened_channel(Complex alpha, double beta, double k_linear,
                               const ComplexVector& w_r, const ComplexVector& w_t,
                               const ComplexMatrix& b_r, const ComplexMatrix& u_field,
                               const ComplexMatrix& b_t) {
  if (u_field.rows() != b_r.cols() || u_field.cols() != b_t.rows())
    throw std::invalid_argument("whitened_channel: dimension mismatch");
  const RicianWeights w = rician_weights(k_linear);
  const Complex scale = alpha * std::sqrt(beta);
  return scale * (w.los * (w_r * w_t.adjoint()) + w.scattered * (b_r * u_field * b_t));
}

ComplexMatrix trans_impedance(const ComplexMatrix& z_r, const ComplexMatrix& z_t,
                              const ComplexMatrix& h_mimo, double phi) {
  check_square(z_r, "trans_impedance");
  check_square(z_t, "trans_impedance");
  if (h_mimo.rows() != z_r.rows() || h_mimo.cols() != z_t.rows())
    throw std::invalid_argument("trans_impedance: dimension mismatch");
  const RealVector d_r = z_r.diagonal().real().cwiseSqrt();
  const RealVector d_t = z_t.diagonal().real().cwiseSqrt();
  return std::polar(1.0, phi) *
         (d_r.asDiagonal() * h_mimo * d_t.asDiagonal());
}

ComplexMatrix raw_channel(double lna_gain, double r_in, const ComplexMatrix& p,
                          const ComplexMatrix& z_rt, const ComplexMatrix& q) {
  if (p.cols() != z_rt.rows() || z_rt.cols() != q.rows())
    throw std::invalid_argument("raw_channel: dimension mismatch");
  return lna_gain * r_in * (p * z_rt * q);
}

ComplexVector simulate_output(const ComplexMatrix& h_tilde, const ComplexVector& v_g,
                              Rng& rng, bool noiseless) {
  if (h_tilde.cols() != v_g.size())
    throw std::invalid_argument("simulate_output: dimension mismatch");
  ComplexVector out = h_tilde * v_g;
  if (!noiseless)
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += rng.next_cnormal();
  return out;
}

}  // namespace swmimo
