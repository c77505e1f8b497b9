#pragma once

#include <numbers>

namespace omit {

// CODATA 2018.
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kSpeedOfLight = 299792458.0;    // m / s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Every angular frequency inside the library is in rad/s. Linear (Hz) values
// only exist at the configuration boundary.
constexpr double hz_to_rad(double hz) noexcept { return kTwoPi * hz; }
constexpr double rad_to_hz(double rad_per_s) noexcept { return rad_per_s / kTwoPi; }

}  // namespace omit
