#pragma once

#include <cmath>

#include "losstan/constants.hpp"
#include "losstan/errors.hpp"

namespace losstan {

// Density of states, eV^-1 cm^-3 -> J^-1 m^-3.
inline double dos_to_si(double g_ev_cm3) {
    if (!(g_ev_cm3 >= 0.0))
        throw InvalidInputError("dos_to_si: density of states must be non-negative");
    return g_ev_cm3 / (si.e * 1e-6);
}

// Density of states, J^-1 m^-3 -> eV^-1 cm^-3 (report boundary).
inline double dos_from_si(double g_si) {
    if (!(g_si >= 0.0))
        throw InvalidInputError("dos_from_si: density of states must be non-negative");
    return g_si * (si.e * 1e-6);
}

inline double dbm_to_watts(double p_dbm) {
    if (!std::isfinite(p_dbm))
        throw InvalidInputError("dbm_to_watts: power must be finite");
    return 1e-3 * std::pow(10.0, p_dbm / 10.0);
}

inline double watts_to_dbm(double p_w) {
    if (!(p_w > 0.0))
        throw InvalidInputError("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(p_w / 1e-3);
}

} // namespace losstan
