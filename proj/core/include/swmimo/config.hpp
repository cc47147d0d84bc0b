// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swmimo/circuit.hpp"
#include "swmimo/geometry.hpp"

namespace swmimo {

enum class KDrawMode { kPerTrial, kPerRun };
enum class PowerSplit { kTotal, kPerSubchannel };

/// Full scenario description. Defaults are the standard urban-macro style
/// setup used throughout: 1 Ohm terminations, 10x LNA, 5 dB noise figure,
/// 2 W over 100 MHz..30 GHz, 90 m link, half-wavelength-free 5 mm ULA.
struct ScenarioConfig {
  // circuit
  double r_ohm = 1.0;
  double r_in_ohm = 1.0;
  double lna_gain = 10.0;
  double noise_figure_db = 5.0;
  double temperature_k = 290.0;
  MutualKernel mutual_kernel = MutualKernel::kChuCoupled;
  double elastance_coeff = 1.0;
  double elastance_exponent = 0.5;
  double r_rad = 1.0;

  // link
  double p_total_w = 2.0;
  double distance_m = 90.0;
  double gamma = 3.5;
  double theta_t_rad = 0.0;
  double theta_r_rad = 0.0;
  double g_t = 1.0;
  double g_r = 1.0;
  // kTotal: P_total shared across all subchannels and modes (default);
  // kPerSubchannel: each subchannel gets the full budget over its modes.
  PowerSplit power_split = PowerSplit::kTotal;

  // arrays
  std::size_t n_t = 1;
  std::size_t n_r = 32;
  double spacing_m = 0.005;
  CouplingRegime regime = CouplingRegime::kTight;
  double tx_radius_m = 0.0;  // 0 = regime default

  // grid
  double f_start_hz = 1e8;
  double f_stop_hz = 3e10;
  double delta_f_hz = 1e7;

  // fading
  double tau_rms_ns = 2.0;
  std::size_t block_len = 512;
  double uncorrelated_threshold = 0.01;
  double asd_low_deg = 10.0;
  double asd_high_deg = 5.0;
  double k_mu_slope = 4.142;
  double k_mu_intercept = 0.246;
  double k_var_slope = 0.455;
  double k_var_intercept = 2.863;
  KDrawMode k_draw = KDrawMode::kPerTrial;

  // run
  std::size_t trials = 100;
  std::uint64_t seed = 1;

  void validate() const;  // throws with a field-level message

  FrequencyGrid grid() const;
  UlaConfig tx_array() const;
  UlaConfig rx_array() const;
  KernelOptions kernel_options() const;
};

/// INI-style text: [section] headers, key = value lines, # or ; comments.
/// Unknown sections or keys are hard errors.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text, const std::string& origin);

/// Apply "section.key=value" overrides on top of a loaded config.
void apply_override(ScenarioConfig& config, const std::string& assignment);

}  // namespace swmimo
