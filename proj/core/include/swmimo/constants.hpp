// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace swmimo {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace swmimo
