#pragma once

#include <numbers>

namespace colorent::constants {

// CODATA 2018, SI units.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double epsilon0 = 8.8541878128e-12;   // F / m
inline constexpr double speed_of_light = 299792458.0;  // m / s

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace colorent::constants
