#pragma once

#include <numbers>

namespace wgquant::constants {

// SI, CODATA 2018. mu0 is derived so that epsilon0 * mu0 * c^2 == 1 holds exactly.
inline constexpr double c = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double epsilon0 = 8.8541878128e-12;
inline constexpr double mu0 = 1.0 / (epsilon0 * c * c);
inline constexpr double pi = std::numbers::pi;

}  // namespace wgquant::constants
