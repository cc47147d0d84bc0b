// SPDX-License-Identifier: Apache-2.0
#include "swmimo/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace swmimo {

std::vector<double> FrequencyGrid::centers() const {
  std::vector<double> out(count);
  for (std::size_t l = 0; l < count; ++l) out[l] = center(l);
  return out;
}

FrequencyGrid build_frequency_grid(double f_start, double f_stop, double delta_f) {
  if (f_start <= 0.0) throw std::invalid_argument("frequency grid: f_start must be positive");
  if (delta_f <= 0.0) throw std::invalid_argument("frequency grid: delta_f must be positive");
  if (f_stop <= f_start) throw std::invalid_argument("frequency grid: f_stop must exceed f_start");
  FrequencyGrid grid;
  grid.f_start = f_start;
  grid.delta_f = delta_f;
  grid.count = static_cast<std::size_t>(std::floor((f_stop - f_start) / delta_f)) + 1;
  return grid;
}

void UlaConfig::validate() const {
  if (n_elements == 0) throw std::invalid_argument("array: n_elements must be positive");
  if (spacing <= 0.0) throw std::invalid_argument("array: spacing must be positive");
  if (element_radius <= 0.0)
    throw std::invalid_argument("array: element_radius must be positive");
  // Chu spheres may touch but not overlap; a single element has no neighbor.
  if (n_elements > 1 && element_radius > spacing / 2.0)
    throw std::invalid_argument("array: element_radius must be at most spacing/2");
}

std::vector<double> element_positions(const UlaConfig& array) {
  array.validate();
  std::vector<double> pos(array.n_elements);
  for (std::size_t m = 0; m < array.n_elements; ++m)
    pos[m] = static_cast<double>(m) * array.spacing;
  return pos;
}

}  // namespace swmimo
