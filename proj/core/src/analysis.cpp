// SPDX-License-Identifier: Apache-2.0
#include "swmimo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swmimo {

std::vector<EigenMode> eigen_snrs(const ComplexMatrix& h_tilde, double total_power,
                                  std::size_t n_subchannels) {
  if (total_power <= 0.0) throw std::invalid_argument("eigen_snrs: total_power must be positive");
  if (n_subchannels == 0) throw std::invalid_argument("eigen_snrs: n_subchannels must be positive");
  const ComplexMatrix gram = h_tilde.adjoint() * h_tilde;
  const HermitianFactor f = hermitian_eigen(gram);
  const std::size_t n_modes =
      static_cast<std::size_t>(std::min(h_tilde.rows(), h_tilde.cols()));
  const double p = total_power / (static_cast<double>(n_subchannels) *
                                  static_cast<double>(n_modes));
  std::vector<EigenMode> modes(n_modes);
  for (std::size_t i = 0; i < n_modes; ++i) {
    EigenMode& m = modes[i];
    m.lambda = std::max(f.eigenvalues(static_cast<Eigen::Index>(i)), 0.0);
    m.power = p;
    m.snr = p * m.lambda;
    m.snr_db = m.snr > 0.0 ? 10.0 * std::log10(m.snr)
                           : -std::numeric_limits<double>::infinity();
  }
  return modes;
}

double scattered_power(const ComplexMatrix& h_eq_sc, double p_t) {
  if (h_eq_sc.cols() == 0) throw std::invalid_argument("scattered_power: empty matrix");
  return p_t * h_eq_sc.squaredNorm() / static_cast<double>(h_eq_sc.cols());
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf: no samples");
  std::sort(samples.begin(), samples.end());
  std::vector<CdfPoint> cdf(samples.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    cdf[i] = {samples[i], static_cast<double>(i + 1) / n};
  return cdf;
}

std::vector<double> steering_magnitude_profile(const ComplexVector& w) {
  const double norm = w.norm();
  if (norm == 0.0) throw std::invalid_argument("steering_magnitude_profile: zero vector");
  std::vector<double> mags(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i)
    mags[static_cast<std::size_t>(i)] = std::abs(w(i)) / norm;
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return mags;
}

std::vector<double> effective_corr_row(const ComplexMatrix& c) {
  if (c.rows() != c.cols() || c.rows() == 0)
    throw std::invalid_argument("effective_corr_row: need a nonempty square matrix");
  const double diag = c(0, 0).real();
  if (diag <= 0.0) throw std::invalid_argument("effective_corr_row: nonpositive diagonal");
  std::vector<double> row(static_cast<std::size_t>(c.cols()));
  for (Eigen::Index m = 0; m < c.cols(); ++m)
    row[static_cast<std::size_t>(m)] = std::abs(c(0, m)) / diag;
  return row;
}

}  // namespace swmimo
