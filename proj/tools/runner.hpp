// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "swmimo/config.hpp"

namespace swmimo::runner {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool svg = false;
};

/// Eigenmode SNR vs frequency (snr_vs_freq.csv). SIMO configs with no
/// explicit transmit radius get the large-reference-antenna override
/// a_T = 100 * spacing.
void run_snr(const ScenarioConfig& config, const RunOptions& opts);

/// Scattered-power CDFs at selected frequencies (power_cdf.csv).
void run_power_cdf(const ScenarioConfig& config, const std::vector<double>& freqs,
                   const RunOptions& opts);

/// Ordered normalized equivalent-steering magnitudes (steering_profile.csv).
void run_steering(const ScenarioConfig& config, double freq, const RunOptions& opts);

/// First-row magnitudes of the equivalent receive correlation (corr_row.csv).
void run_corr_row(const ScenarioConfig& config, const std::vector<double>& freqs,
                  const RunOptions& opts);

/// Invariant suite: passivity, whitening, recursion covariance, Kronecker
/// covariance, pipeline equivalence. Returns the number of failures.
int validate(const ScenarioConfig& config, std::ostream& out);

/// The exact CSV column contract, one line per artifact.
std::string schema_text();

}  // namespace swmimo::runner
