// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swmimo/channel.hpp"
#include "swmimo/circuit.hpp"
#include "swmimo/config.hpp"
#include "swmimo/fading.hpp"
#include "swmimo/noise.hpp"

namespace swmimo {

/// Everything at one frequency that does not depend on the trial draw.
struct FrequencyContext {
  double f = 0.0;
  ImpedanceSet imp;
  NoiseModel noise;
  ComplexMatrix r_r, r_t;            // physical spatial correlation
  ComplexMatrix r_r_sqrt, r_t_sqrt;  // Hermitian square roots
  ComplexVector a_r, a_t;            // physical steering
  ComplexVector w_r, w_t;            // equivalent steering
  ComplexMatrix c_r, c_t;            // equivalent spatial correlation
  ComplexMatrix b_r, b_t;            // coloring factors, b_r b_r^H = c_r, b_t^H b_t = c_t
  double beta_los = 0.0;
};

/// Standardized normal driving the K-factor for one trial, derived from the
/// run seed. Per-run mode ignores the trial index.
double k_standard_draw(const ScenarioConfig& config, std::uint64_t trial);

/// Build the context for one frequency. asd_grid anchors the ASD schedule
/// (normally the configured band, even when f is probed in isolation).
FrequencyContext build_frequency_context(const ScenarioConfig& config,
                                         const FrequencyGrid& asd_grid, double f);

class ScenarioEngine {
 public:
  explicit ScenarioEngine(ScenarioConfig config);

  const ScenarioConfig& config() const { return config_; }
  const FrequencyGrid& grid() const { return grid_; }
  const FrequencyContext& context(std::size_t l) const { return contexts_.at(l); }
  const KFactorModel& k_model() const { return k_model_; }

  /// Standardized normal for the K-factor, fixed across frequency. Per-run
  /// mode ignores the trial index.
  double k_draw_z(std::uint64_t trial) const;
  double k_at(std::size_t l, double z) const;

  /// Full channel realizations for one trial across the grid. The
  /// trial-independent factors (w, C, B) live in the contexts; set
  /// include_context_fields to copy them into each realization.
  std::vector<ChannelRealization> realize_trial(std::uint64_t trial,
                                                bool include_context_fields = false) const;

 private:
  ScenarioConfig config_;
  FrequencyGrid grid_;
  KFactorModel k_model_;
  std::vector<FrequencyContext> contexts_;
};

/// Run fn(i) for i in [0, n) on a small thread pool. Falls back to the
/// calling thread for n == 1 or single-core hosts.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace swmimo
