#pragma once

#include "losstan/constants.hpp"
#include "losstan/errors.hpp"

namespace losstan {

// Variable-range-hopping model parameters, SI units throughout.
struct VrhParams {
    double alpha = 0.0;     // inverse localization length [1/m]
    double gamma = 0.0;     // hopping attempt frequency [Hz]
    double g_f = 0.0;       // density of localized states at E_F [1/(J m^3)]
    double sigma0 = 0.0;    // residual conductivity [S/m]
    double tls_loss = 0.0;  // constant dielectric loss tangent, default off

    void validate() const;
};

// Evaluation point for the model.
struct Environment {
    double temperature = 0.0;  // K
    double field = 0.0;        // V/m
    double omega = 0.0;        // rad/s
    double eps_r = 11.5;       // real relative permittivity

    void validate() const;
};

enum class HopBranch { with_field, against_field };

// Result of the inner 1-D minimization of the hopping range over the hop
// distance r.
struct HopSolution {
    double r_opt = 0.0;      // m
    double range_min = 0.0;  // dimensionless
    HopBranch branch = HopBranch::with_field;
    bool clamped = false;    // activation clamped to zero at the optimum
};

// Average energy spacing of states reachable within r: W = 81/(256 pi g r^3).
double hop_energy(double r, double g_f);

// Hop distance at which the field energy gain equals W, i.e. the boundary of
// the activation-free region for against-field hops:
// r_c = (81 / (256 pi g e E))^(1/4).
double activation_free_boundary(double field, double g_f);

// Dimensionless hopping range 2 alpha r + activation/(k_B T).
//
// The activation is W(r) + e r E for with-field hops and W(r) - e r E for
// against-field hops. For against-field hops the signed activation is kept
// (an energy gain shortens the range and rewards longer hops) as long as the
// objective stays bounded below, i.e. eE < 2 alpha k_B T. Beyond that the
// activation is clamped at zero, which restores a well-posed minimum at the
// boundary r_c.
double hopping_range(double r, const Environment& env, HopBranch branch,
                     const VrhParams& params);

// Global minimum of hopping_range over r in [1e-9, 1e-3] m: 64 log-spaced
// probes bracket, golden-section refines to 1e-10 relative tolerance on r,
// and r_c is always probed as a kink candidate.
HopSolution minimize_range(const Environment& env, HopBranch branch, const VrhParams& params);

// Hop current density J = 2 e gamma g k_B T r_opt exp(-min range) [A/m^2],
// with the branch-specific minimizer.
double hop_current(const Environment& env, HopBranch branch, const VrhParams& params);

// Hopping conductivity |J+ - J-| / E [S/m]. Fields below e_switch are
// evaluated at e_switch to stabilize the 0/0 limit.
double hopping_conductivity(const Environment& env, const VrhParams& params,
                            double e_switch = 1e-3);

// Loss tangent 1/Q_Si = tls_loss + (sigma_h + sigma0) / (omega eps0 eps_r).
double loss_tangent_model(const Environment& env, const VrhParams& params,
                          double e_switch = 1e-3);

// Qualitative low-field shape reference sinh(e r0 E / k_B T) with r0 from the
// zero-field minimizer; arbitrary normalization, report use only.
double sinh_low_field_reference(const Environment& env, const VrhParams& params);

} // namespace losstan
