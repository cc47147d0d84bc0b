// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace swmimo {

/// Equally spaced sub-channel center frequencies spanning the operating band.
struct FrequencyGrid {
  double f_start = 0.0;  // Hz, first center
  double delta_f = 0.0;  // Hz, sub-channel bandwidth
  std::size_t count = 0;

  // Centers are computed from the index so they are bit-exact, with no
  // cumulative summation drift.
  double center(std::size_t l) const { return f_start + static_cast<double>(l) * delta_f; }
  double f_stop() const { return center(count - 1); }
  std::vector<double> centers() const;
};

FrequencyGrid build_frequency_grid(double f_start, double f_stop, double delta_f);

/// Colinear uniform linear array of identical elements.
struct UlaConfig {
  std::size_t n_elements = 1;
  double spacing = 0.0;         // m, center-to-center
  double element_radius = 0.0;  // m, Chu enclosing-sphere radius

  void validate() const;
};

/// Axial coordinates p_m = m * spacing along the shared array axis.
std::vector<double> element_positions(const UlaConfig& array);

}  // namespace swmimo
