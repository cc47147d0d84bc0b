// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "swmimo/numerics.hpp"
#include "swmimo/rng.hpp"

namespace swmimo {

/// ULA steering vector, first-element phase reference:
/// a_m = exp(j 2 pi spacing (f/c) m sin(theta)), m = 0..n-1.
ComplexVector steering_vector(std::size_t n, double spacing, double f, double theta);

struct PathGain {
  double beta_los;  // G_T G_R (c / (2 pi f d^{gamma/2}))^2
  double beta;      // beta_los (1 + 1/K)
};

/// K outside [1e-8, 1e8] takes a limit branch: the LoS-only limit sets
/// beta = beta_los, and the Rayleigh limit keeps beta = beta_los with all
/// power routed to the scattered term (the 1/K form diverges there).
PathGain path_gain(double f, double k_linear, double g_t, double g_r, double d, double gamma);

/// Rician blend weights sqrt(K/(K+1)) and sqrt(1/(K+1)), with the same
/// limit branches as path_gain.
struct RicianWeights {
  double los;
  double scattered;
};
RicianWeights rician_weights(double k_linear);

/// H_MIMO = sqrt(beta) [ w_los a_R a_T^H + w_sc R_R^{1/2} U R_T^{1/2} ].
ComplexMatrix assemble_h_mimo(double k_linear, double beta, const ComplexVector& a_r,
                              const ComplexVector& a_t, const ComplexMatrix& r_r_sqrt,
                              const ComplexMatrix& u_field, const ComplexMatrix& r_t_sqrt);

/// w_R = W P a_R (receive) and w_T = Q^H a_T (transmit).
ComplexVector equivalent_rx_steering(const ComplexMatrix& whitener, const ComplexMatrix& p,
                                     const ComplexVector& a_r);
ComplexVector equivalent_tx_steering(const ComplexMatrix& q, const ComplexVector& a_t);

/// C_R = W P R_R P^H W^H and C_T = Q^H R_T Q.
ComplexMatrix equivalent_rx_corr(const ComplexMatrix& whitener, const ComplexMatrix& p,
                                 const ComplexMatrix& r_r);
ComplexMatrix equivalent_tx_corr(const ComplexMatrix& q, const ComplexMatrix& r_t);

/// Coloring factors for the equivalent scattered term that reuse the same
/// unit field U as the raw pipeline: B_R = W P R_R^{1/2} (B_R B_R^H = C_R)
/// and B_T = R_T^{1/2} Q (B_T^H B_T = C_T). Using the Hermitian square
/// roots of C_R, C_T instead would give the same statistics but not the
/// same realization, breaking the per-draw raw-vs-equivalent comparison.
ComplexMatrix equivalent_rx_factor(const ComplexMatrix& whitener, const ComplexMatrix& p,
                                   const ComplexMatrix& r_r_sqrt);
ComplexMatrix equivalent_tx_factor(const ComplexMatrix& r_t_sqrt, const ComplexMatrix& q);

/// H~ = alpha sqrt(beta) [ w_los w_R w_T^H + w_sc B_R U B_T ].
ComplexMatrix whitened_channel(Complex alpha, double beta, double k_linear,
                               const ComplexVector& w_r, const ComplexVector& w_t,
                               const ComplexMatrix& b_r, const ComplexMatrix& u_field,
                               const ComplexMatrix& b_t);

/// Trans-impedance Z_RT = diag(Re Z_R)^{1/2} H_MIMO diag(Re Z_T)^{1/2} e^{j phi}.
ComplexMatrix trans_impedance(const ComplexMatrix& z_r, const ComplexMatrix& z_t,
                              const ComplexMatrix& h_mimo, double phi);

/// Unwhitened receive-side channel lna_gain * r_in * P Z_RT Q.
ComplexMatrix raw_channel(double lna_gain, double r_in, const ComplexMatrix& p,
                          const ComplexMatrix& z_rt, const ComplexMatrix& q);

/// Everything produced for one (frequency, trial) pair.
struct ChannelRealization {
  ComplexMatrix h_mimo;
  ComplexMatrix h_eq_los;  // alpha sqrt(beta) w_los w_R w_T^H
  ComplexMatrix h_eq_sc;   // alpha sqrt(beta) w_sc B_R U B_T
  ComplexMatrix h_tilde;   // h_eq_los + h_eq_sc
  ComplexVector w_r, w_t;
  ComplexMatrix c_r, c_t;
  double path_gain_los = 0.0;
  double path_gain = 0.0;
  double k_linear = 0.0;
};

/// One receive sample H~ v_g + n with n ~ CN(0, I) (identity because the
/// channel is already whitened). noiseless skips the noise draw entirely.
ComplexVector simulate_output(const ComplexMatrix& h_tilde, const ComplexVector& v_g,
                              Rng& rng, bool noiseless = false);

}  // namespace swmimo
