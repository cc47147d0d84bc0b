// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swmimo/numerics.hpp"

namespace swmimo {

struct NoiseParams {
  double boltzmann;            // J/K
  double temperature;          // K
  double delta_f;              // Hz
  double r_in;                 // Ohm
  double noise_factor_linear;  // >= 1
  double lna_gain;             // dimensionless
};

/// Thermal noise covariance of the receive array: 4 k_b T df Re{Z_R}.
RealMatrix antenna_noise_cov(const ComplexMatrix& z_r, double k_b, double T, double delta_f);

/// LNA noise covariance scalar: 4 k_b T df R_in (N_f - 1), times I.
double lna_noise_scalar(double r_in, double noise_factor_linear, double k_b, double T,
                        double delta_f);

/// Total received noise covariance
/// 4 k_b T df R_in [ (N_f - 1) I + lna_gain^2 R_in P Re{Z_R} P^H ].
ComplexMatrix total_noise_cov(const ComplexMatrix& p, const ComplexMatrix& z_r,
                              const NoiseParams& params);

struct NoiseModel {
  ComplexMatrix r_n;       // Hermitian PD
  ComplexMatrix whitener;  // R_n^{-1/2}, whitener * r_n * whitener^H = I
};

NoiseModel build_noise_model(const ComplexMatrix& p, const ComplexMatrix& z_r,
                             const NoiseParams& params);

}  // namespace swmimo
