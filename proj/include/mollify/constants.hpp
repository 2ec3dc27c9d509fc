#pragma once

#include <numbers>

namespace mollify {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Log-error floor used for every reported log10|E|.
inline constexpr double kErrorFloor = 1e-16;

}  // namespace mollify
