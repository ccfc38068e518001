#pragma once

#include <numbers>

namespace losstan {

// 2019 SI exact values (CODATA). All internal computation is in SI units;
// conversions happen only at file-format and report boundaries.
struct PhysicalConstants {
    double e = 1.602176634e-19;       // elementary charge [C]
    double k_B = 1.380649e-23;        // Boltzmann constant [J/K]
    double hbar = 1.054571817e-34;    // reduced Planck constant [J s]
    double eps0 = 8.8541878128e-12;   // vacuum permittivity [F/m]
};

inline constexpr PhysicalConstants si{};

inline constexpr double pi = std::numbers::pi_v<double>;

} // namespace losstan
