// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "swmimo/geometry.hpp"
#include "swmimo/numerics.hpp"

namespace swmimo {

/// Self and pairwise element impedances at one frequency.
/// Implementations must keep Re{Z} of any array built from them PSD.
class ImpedanceModel {
 public:
  virtual ~ImpedanceModel() = default;
  virtual Complex self_impedance(double f) const = 0;
  virtual Complex mutual_impedance(double f, double distance) const = 0;
};

/// Chu lowest-mode equivalent circuit: series C with parallel R-L,
/// C = a/(c*R), L = a*R/c. Re{Z} = R (ka)^2 / (1 + (ka)^2).
Complex chu_self_impedance(double f, double radius, double r_rad);

/// Classical CMS coupling kernel: self_re * [sinc(kd) + j cos(kd)/(kd)].
Complex cms_mutual_impedance(double f, double distance, double self_re);

/// Phase of the trans-impedance under the Chu circuit:
/// pi - arctan(2 pi f a_T / c) - arctan(2 pi f a_R / c), in (0, pi].
double chu_phase(double f, double radius_t, double radius_r);

/// alpha(f) = lna_gain * r_in * sqrt(Re{Z1} Re{Z2}) * e^{j phi}.
Complex alpha_scale(double r_in, double lna_gain, double z1_re, double z2_re, double phi);

enum class CouplingRegime { kTight, kWeak, kDecoupled };
enum class MutualKernel { kChuCoupled, kCmsSinc, kNone };

CouplingRegime parse_regime(const std::string& name);
std::string regime_name(CouplingRegime regime);

/// Chu self-impedance plus a configurable mutual kernel.
///
/// kChuCoupled is the shipped default for closely packed or connected
/// elements: real part from the collinear small-antenna radiation kernel
/// (passive by construction), reactance from the mutual elastance of the
/// element capacitances, -(1/(w C)) * chi * (a/d)^p * cos(kd). With the
/// default chi = 1, p = 1/2 a tightly coupled array develops a collective
/// low-frequency resonance: one array mode is transmitted with near-unit
/// gain through (Z + R_in I)^-1 while the rest stay reactance-blocked,
/// which is what widens the usable band.
class ChuAntennaModel final : public ImpedanceModel {
 public:
  ChuAntennaModel(double radius, double r_rad, MutualKernel kernel,
                  double mutual_scale = 1.0, double elastance_coeff = 1.0,
                  double elastance_exponent = 0.5);

  Complex self_impedance(double f) const override;
  Complex mutual_impedance(double f, double distance) const override;

  double radius() const { return radius_; }

 private:
  double radius_;
  double r_rad_;
  MutualKernel kernel_;
  double mutual_scale_;
  double elastance_coeff_;
  double elastance_exponent_;
};

struct KernelOptions {
  MutualKernel kernel = MutualKernel::kChuCoupled;
  double elastance_coeff = 1.0;
  double elastance_exponent = 0.5;
  double r_rad = 1.0;  // Ohm, radiation resistance scale
};

/// Regime conventions: tight uses a = spacing/2 (touching Chu spheres);
/// weak uses a = spacing/20 with mutual terms additionally scaled by
/// (a/(spacing/2))^3; decoupled zeroes all mutual terms.
double regime_element_radius(CouplingRegime regime, double spacing);
std::unique_ptr<ImpedanceModel> make_regime_model(CouplingRegime regime, double spacing,
                                                  const KernelOptions& opts,
                                                  double radius_override = 0.0);

/// Symmetric (non-Hermitian) impedance matrix: self on the diagonal,
/// mutual_impedance(f, |i-j|*spacing) off it; Toeplitz for a ULA.
ComplexMatrix array_impedance_matrix(const UlaConfig& array, double f,
                                     const ImpedanceModel& model);

/// (z + r_series*I)^-1 with a residual check; `f` only labels errors.
ComplexMatrix coupling_matrix(const ComplexMatrix& z, double r_series, double f);

/// Per-frequency circuit products feeding the channel assembly.
struct ImpedanceSet {
  ComplexMatrix z_t, z_r;  // array impedance matrices (Ohm)
  ComplexMatrix p, q;      // coupling matrices (Ohm^-1)
  double phi = 0.0;        // rad
  double z1_re = 0.0;      // Re{Z_1}, common transmit self-resistance (Ohm)
  double z2_re = 0.0;      // Re{Z_2}, common receive self-resistance (Ohm)
  Complex alpha;           // channel scale alpha(f)
};

ImpedanceSet build_impedance_set(const UlaConfig& tx, const UlaConfig& rx, double f,
                                 const ImpedanceModel& tx_model,
                                 const ImpedanceModel& rx_model, double r_source,
                                 double r_in, double lna_gain);

}  // namespace swmimo
