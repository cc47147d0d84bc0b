// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "swmimo/numerics.hpp"

namespace swmimo {

struct EigenMode {
  double lambda;  // eigenvalue of H~^H H~, descending
  double power;   // W allocated to this mode
  double snr;     // linear
  double snr_db;
};

/// Eigenmode SNRs of one whitened channel: SNR_i = P_i lambda_i(H~^H H~).
/// Equal allocation splits total_power over n_subchannels * active modes.
std::vector<EigenMode> eigen_snrs(const ComplexMatrix& h_tilde, double total_power,
                                  std::size_t n_subchannels);

/// Isotropic-input average received scattered power p_t ||H_sc||_F^2 / N_t.
double scattered_power(const ComplexMatrix& h_eq_sc, double p_t);

struct CdfPoint {
  double value;
  double prob;
};

/// Step CDF: sorted values with prob = rank / n.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

/// |w_m| / ||w||, sorted descending. Squared magnitudes sum to 1.
std::vector<double> steering_magnitude_profile(const ComplexVector& w);

/// |[C]_{0,m}| / [C]_{0,0} for m = 0..N-1 (first value is 1).
std::vector<double> effective_corr_row(const ComplexMatrix& c);

}  // namespace swmimo
