// SPDX-License-Identifier: Apache-2.0
#include "swmimo/noise.hpp"

#include <stdexcept>

namespace swmimo {

RealMatrix antenna_noise_cov(const ComplexMatrix& z_r, double k_b, double T, double delta_f) {
  if (T <= 0.0 || delta_f <= 0.0)
    throw std::invalid_argument("antenna_noise_cov: temperature and delta_f must be positive");
  return 4.0 * k_b * T * delta_f * z_r.real();
}

double lna_noise_scalar(double r_in, double noise_factor_linear, double k_b, double T,
                        double delta_f) {
  if (noise_factor_linear < 1.0)
    throw std::invalid_argument("lna_noise_scalar: noise factor below 1");
  if (T <= 0.0 || delta_f <= 0.0)
    throw std::invalid_argument("lna_noise_scalar: temperature and delta_f must be positive");
  return 4.0 * k_b * T * delta_f * r_in * (noise_factor_linear - 1.0);
}

ComplexMatrix total_noise_cov(const ComplexMatrix& p, const ComplexMatrix& z_r,
                              const NoiseParams& params) {
  if (p.rows() != z_r.rows() || p.cols() != z_r.cols() || p.rows() != p.cols())
    throw std::invalid_argument("total_noise_cov: dimension mismatch");
  const Eigen::Index n = p.rows();
  const double base = 4.0 * params.boltzmann * params.temperature * params.delta_f * params.r_in;
  if (params.noise_factor_linear < 1.0)
    throw std::invalid_argument("total_noise_cov: noise factor below 1");
  ComplexMatrix coupled = params.lna_gain * params.lna_gain * params.r_in *
                          (p * z_r.real() * p.adjoint());
  coupled = 0.5 * (coupled + coupled.adjoint().eval());  // symmetrize roundoff
  return base * ((params.noise_factor_linear - 1.0) * ComplexMatrix::Identity(n, n) + coupled);
}

NoiseModel build_noise_model(const ComplexMatrix& p, const ComplexMatrix& z_r,
                             const NoiseParams& params) {
  NoiseModel model;
  model.r_n = total_noise_cov(p, z_r, params);
  model.whitener = hermitian_inv_sqrt(model.r_n);
  return model;
}

}  // namespace swmimo
