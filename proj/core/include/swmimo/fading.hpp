// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "swmimo/geometry.hpp"
#include "swmimo/numerics.hpp"
#include "swmimo/rng.hpp"

namespace swmimo {

/// Local scattering cluster seen by a ULA: multipath angle is
/// central_angle + omega with omega Laplacian, scale b = asd/sqrt(2)
/// (so Var(omega) = asd^2), truncated to [-pi, pi] and renormalized.
struct SpatialCorrModel {
  double central_angle = 0.0;  // rad
  double asd = 0.0;            // rad, angular standard deviation
  double spacing = 0.0;        // m
};

/// [R_s]_ij = E[ exp(j 2 pi spacing (f/c) (j-i) sin(angle)) ], by adaptive
/// Gauss-Kronrod quadrature (absolute target 1e-9; estimated error above
/// 1e-8 is an error naming (i, j, f)).
Complex spatial_correlation_entry(int i, int j, double f, const SpatialCorrModel& model);

/// Hermitian Toeplitz correlation matrix with unit diagonal.
ComplexMatrix spatial_correlation_matrix(std::size_t n, double f, const SpatialCorrModel& model);

/// ASD interpolated linearly in f from asd_low at the band start down to
/// asd_high at the band stop. Radians in, radians out.
double asd_schedule(double f, const FrequencyGrid& grid, double asd_low, double asd_high);

/// Jakes frequency correlation: 1 / (1 + 2 pi delta_f |lag| tau_rms).
double jakes_entry(long lag, double delta_f, double tau_rms);

RealMatrix jakes_matrix(std::size_t n, double delta_f, double tau_rms);

/// Constant-memory generator of Jakes-correlated fading along frequency.
///
/// The 2n x 2n Jakes matrix [[R1, C], [C^H, R1]] is Cholesky-split once;
/// block k is then U1^H u_1 for k = 1 and A h_{k-1} + U3^H u_k after, with
/// A = U2^H (U1^H)^-1. Marginal covariance of every block is R1 and the
/// joint covariance of consecutive blocks is the full 2n x 2n matrix.
class FreqCorrGenerator {
 public:
  FreqCorrGenerator(std::size_t block_len, double delta_f, double tau_rms);

  /// Emit the next length-n block given n fresh CN(0,1) draws.
  ComplexVector next_block(const ComplexVector& u);
  void reset();

  std::size_t block_len() const { return n_; }
  const ComplexMatrix& u1_adjoint() const { return u1h_; }
  const ComplexMatrix& u3_adjoint() const { return u3h_; }
  const ComplexMatrix& transition() const { return a_; }
  const RealMatrix& r1() const { return r1_; }

 private:
  std::size_t n_;
  ComplexMatrix u1h_, u3h_, a_;
  RealMatrix r1_;
  ComplexVector state_;
  bool started_ = false;
};

/// Log-normal Rician K-factor, dB mean and variance linear in log10(f_GHz).
struct KFactorModel {
  double mu_slope = 4.142;
  double mu_intercept = 0.246;
  double var_slope = 0.455;
  double var_intercept = 2.863;

  double mean_db(double f_ghz) const;
  double var_db(double f_ghz) const;
  /// K_dB = mu(f) + z * sigma(f); z is one standardized draw per
  /// environment, held fixed across frequency. Returns the linear value.
  double k_linear(double f_hz, double z) const;
};

struct FadingStreamParams {
  std::size_t block_len = 512;
  double tau_rms = 2e-9;  // s
  std::uint64_t master_seed = 0;
};

/// Unit-variance scattered field U(f): i.i.d. across (rx, tx) entries,
/// Jakes-correlated along frequency. Each entry stream is seeded from
/// (master_seed, trial, rx, tx), so generation order cannot change results.
std::vector<ComplexMatrix> generate_unit_field(std::size_t n_r, std::size_t n_t,
                                               std::size_t n_freq, double delta_f,
                                               const FadingStreamParams& params,
                                               std::uint64_t trial);

/// Apply per-frequency spatial coloring: out[l] = r_factor[l] * u[l] * t_factor[l].
std::vector<ComplexMatrix> color_field(const std::vector<ComplexMatrix>& unit_field,
                                       const std::vector<ComplexMatrix>& r_factors,
                                       const std::vector<ComplexMatrix>& t_factors);

/// Colored scattered field R_R^{1/2}(f) U(f) R_T^{1/2}(f) over the grid.
std::vector<ComplexMatrix> generate_scattered_field(
    std::size_t n_r, std::size_t n_t, const FrequencyGrid& grid,
    const std::vector<ComplexMatrix>& spatial_r_factors,
    const std::vector<ComplexMatrix>& spatial_t_factors,
    const FadingStreamParams& params, std::uint64_t trial);

}  // namespace swmimo
