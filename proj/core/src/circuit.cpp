// SPDX-License-Identifier: Apache-2.0
#include "swmimo/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "swmimo/constants.hpp"

namespace swmimo {

Complex chu_self_impedance(double f, double radius, double r_rad) {
  if (f <= 0.0 || radius <= 0.0 || r_rad <= 0.0)
    throw std::invalid_argument("chu_self_impedance: inputs must be positive");
  const double w = 2.0 * kPi * f;
  const double cap = radius / (kSpeedOfLight * r_rad);
  const double ind = radius * r_rad / kSpeedOfLight;
  const Complex jwl(0.0, w * ind);
  return 1.0 / Complex(0.0, w * cap) + jwl * r_rad / (r_rad + jwl);
}

Complex cms_mutual_impedance(double f, double distance, double self_re) {
  if (distance <= 0.0)
    throw std::invalid_argument("cms_mutual_impedance: distance must be positive (self case is chu_self_impedance)");
  const double u = 2.0 * kPi * f * distance / kSpeedOfLight;
  return self_re * Complex(std::sin(u) / u, std::cos(u) / u);
}

double chu_phase(double f, double radius_t, double radius_r) {
  if (f < 0.0) throw std::invalid_argument("chu_phase: negative frequency");
  const double k = 2.0 * kPi * f / kSpeedOfLight;
  return kPi - std::atan(k * radius_t) - std::atan(k * radius_r);
}

Complex alpha_scale(double r_in, double lna_gain, double z1_re, double z2_re, double phi) {
  if (z1_re < 0.0 || z2_re < 0.0)
    throw std::invalid_argument("alpha_scale: negative self-resistance");
  return lna_gain * r_in * std::sqrt(z1_re * z2_re) * std::polar(1.0, phi);
}

CouplingRegime parse_regime(const std::string& name) {
  if (name == "tight") return CouplingRegime::kTight;
  if (name == "weak") return CouplingRegime::kWeak;
  if (name == "decoupled") return CouplingRegime::kDecoupled;
  throw std::invalid_argument("unknown coupling regime: " + name);
}

std::string regime_name(CouplingRegime regime) {
  switch (regime) {
    case CouplingRegime::kTight: return "tight";
    case CouplingRegime::kWeak: return "weak";
    case CouplingRegime::kDecoupled: return "decoupled";
  }
  return "?";
}

ChuAntennaModel::ChuAntennaModel(double radius, double r_rad, MutualKernel kernel,
                                 double mutual_scale, double elastance_coeff,
                                 double elastance_exponent)
    : radius_(radius),
      r_rad_(r_rad),
      kernel_(kernel),
      mutual_scale_(mutual_scale),
      elastance_coeff_(elastance_coeff),
      elastance_exponent_(elastance_exponent) {
  if (radius <= 0.0 || r_rad <= 0.0)
    throw std::invalid_argument("ChuAntennaModel: radius and r_rad must be positive");
}

Complex ChuAntennaModel::self_impedance(double f) const {
  return chu_self_impedance(f, radius_, r_rad_);
}

Complex ChuAntennaModel::mutual_impedance(double f, double distance) const {
  if (distance <= 0.0)
    throw std::invalid_argument("ChuAntennaModel: mutual distance must be positive");
  if (kernel_ == MutualKernel::kNone || mutual_scale_ == 0.0) return {0.0, 0.0};
  const double self_re = self_impedance(f).real();
  if (kernel_ == MutualKernel::kCmsSinc)
    return mutual_scale_ * cms_mutual_impedance(f, distance, self_re);
  const double u = 2.0 * kPi * f * distance / kSpeedOfLight;
  const double re = self_re * 3.0 * (std::sin(u) / (u * u * u) - std::cos(u) / (u * u));
  const double w = 2.0 * kPi * f;
  const double cap = radius_ / (kSpeedOfLight * r_rad_);
  const double im = -elastance_coeff_ * std::pow(radius_ / distance, elastance_exponent_) *
                    std::cos(u) / (w * cap);
  return mutual_scale_ * Complex(re, im);
}

double regime_element_radius(CouplingRegime regime, double spacing) {
  // Decoupled keeps the tight element size so the comparison isolates coupling.
  return regime == CouplingRegime::kWeak ? spacing / 20.0 : spacing / 2.0;
}

std::unique_ptr<ImpedanceModel> make_regime_model(CouplingRegime regime, double spacing,
                                                  const KernelOptions& opts,
                                                  double radius_override) {
  const double a = radius_override > 0.0 ? radius_override
                                         : regime_element_radius(regime, spacing);
  double scale = 1.0;
  MutualKernel kernel = opts.kernel;
  switch (regime) {
    case CouplingRegime::kTight:
      break;
    case CouplingRegime::kWeak:
      scale = std::pow(a / (spacing / 2.0), 3.0);
      break;
    case CouplingRegime::kDecoupled:
      kernel = MutualKernel::kNone;
      break;
  }
  return std::make_unique<ChuAntennaModel>(a, opts.r_rad, kernel, scale,
                                           opts.elastance_coeff, opts.elastance_exponent);
}

ComplexMatrix array_impedance_matrix(const UlaConfig& array, double f,
                                     const ImpedanceModel& model) {
  array.validate();
  const Eigen::Index n = static_cast<Eigen::Index>(array.n_elements);
  ComplexMatrix z(n, n);
  const Complex self = model.self_impedance(f);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i, i) = self;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex m = model.mutual_impedance(f, static_cast<double>(j - i) * array.spacing);
      z(i, j) = m;
      z(j, i) = m;  // reciprocity: symmetric, not conjugated
    }
  }
  return z;
}

ComplexMatrix coupling_matrix(const ComplexMatrix& z, double r_series, double f) {
  const Eigen::Index n = z.rows();
  ComplexMatrix a = z + r_series * ComplexMatrix::Identity(n, n);
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  ComplexMatrix inv = lu.solve(ComplexMatrix::Identity(n, n));
  const double residual = (a * inv - ComplexMatrix::Identity(n, n)).norm() /
                          std::sqrt(static_cast<double>(n));
  if (!std::isfinite(residual) || residual > 1e-10)
    throw std::runtime_error("coupling_matrix: singular impedance matrix at f = " +
                             std::to_string(f) + " Hz (residual " +
                             std::to_string(residual) + ")");
  return inv;
}

ImpedanceSet build_impedance_set(const UlaConfig& tx, const UlaConfig& rx, double f,
                                 const ImpedanceModel& tx_model,
                                 const ImpedanceModel& rx_model, double r_source,
                                 double r_in, double lna_gain) {
  ImpedanceSet set;
  set.z_t = array_impedance_matrix(tx, f, tx_model);
  set.z_r = array_impedance_matrix(rx, f, rx_model);
  set.q = coupling_matrix(set.z_t, r_source, f);
  set.p = coupling_matrix(set.z_r, r_in, f);
  set.phi = chu_phase(f, tx.element_radius, rx.element_radius);
  set.z1_re = set.z_t(0, 0).real();
  set.z2_re = set.z_r(0, 0).real();
  set.alpha = alpha_scale(r_in, lna_gain, set.z1_re, set.z2_re, set.phi);
  return set;
}

}  // namespace swmimo
