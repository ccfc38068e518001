#include "losstan/vrh.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "losstan/scalar_minimize.hpp"

namespace losstan {

namespace {

constexpr double r_scan_lo = 1e-9;   // m
constexpr double r_scan_hi = 1e-3;   // m
constexpr int r_scan_probes = 64;
constexpr double r_rel_tol = 1e-10;

// W(r) numerator: 81/(256 pi g).
double energy_scale(double g_f) { return 81.0 / (256.0 * pi * g_f); }

// Against-field objective unbounded below iff eE >= 2 alpha k_B T.
bool downhill_unbounded(const Environment& env, const VrhParams& params) {
    return si.e * env.field >= 2.0 * params.alpha * si.k_B * env.temperature;
}

} // namespace

void VrhParams::validate() const {
    if (!(alpha > 0.0)) throw InvalidInputError("vrh: alpha must be positive");
    if (!(gamma >= 0.0)) throw InvalidInputError("vrh: gamma must be non-negative");
    if (!(g_f > 0.0)) throw InvalidInputError("vrh: g_f must be positive");
    if (!(sigma0 >= 0.0)) throw InvalidInputError("vrh: sigma0 must be non-negative");
    if (!(tls_loss >= 0.0)) throw InvalidInputError("vrh: tls_loss must be non-negative");
}

void Environment::validate() const {
    if (!(temperature > 0.0)) throw InvalidInputError("environment: temperature must be positive");
    if (!(field >= 0.0)) throw InvalidInputError("environment: field must be non-negative");
    if (!(omega > 0.0)) throw InvalidInputError("environment: omega must be positive");
    if (!(eps_r >= 1.0)) throw InvalidInputError("environment: eps_r must be at least 1");
}

double hop_energy(double r, double g_f) {
    if (!(r > 0.0)) throw InvalidInputError("hop_energy: distance must be positive");
    if (!(g_f > 0.0)) throw InvalidInputError("hop_energy: g_f must be positive");
    return energy_scale(g_f) / (r * r * r);
}

double activation_free_boundary(double field, double g_f) {
    if (!(field > 0.0)) throw InvalidInputError("activation_free_boundary: field must be positive");
    if (!(g_f > 0.0)) throw InvalidInputError("activation_free_boundary: g_f must be positive");
    return std::pow(energy_scale(g_f) / (si.e * field), 0.25);
}

double hopping_range(double r, const Environment& env, HopBranch branch,
                     const VrhParams& params) {
    if (!(r > 0.0)) throw InvalidInputError("hopping_range: distance must be positive");
    const double w = hop_energy(r, params.g_f);
    const double drive = si.e * r * env.field;
    double activation;
    if (branch == HopBranch::with_field) {
        activation = w + drive;
    } else {
        activation = w - drive;
        if (downhill_unbounded(env, params)) activation = std::max(0.0, activation);
    }
    return 2.0 * params.alpha * r + activation / (si.k_B * env.temperature);
}

HopSolution minimize_range(const Environment& env, HopBranch branch, const VrhParams& params) {
    env.validate();
    params.validate();

    HopSolution sol;
    sol.branch = branch;

    const bool against = branch == HopBranch::against_field;
    if (against && env.field > 0.0 && downhill_unbounded(env, params)) {
        // Clamped regime: the objective decreases up to r_c and grows as
        // 2 alpha r beyond it, so the minimum sits exactly on the boundary.
        const double r_c = activation_free_boundary(env.field, params.g_f);
        if (r_c <= r_scan_lo || r_c >= r_scan_hi)
            throw OptimizationError("minimize_range: clamp boundary r_c = " +
                                    std::to_string(r_c) + " m outside the search domain");
        sol.r_opt = r_c;
        sol.range_min = 2.0 * params.alpha * r_c;
        sol.clamped = true;
        return sol;
    }

    std::vector<double> kinks;
    if (against && env.field > 0.0)
        kinks.push_back(activation_free_boundary(env.field, params.g_f));

    auto objective = [&](double r) { return hopping_range(r, env, branch, params); };
    ScalarMinimum<double> best;
    try {
        best = minimize_log_bracketed(objective, r_scan_lo, r_scan_hi, r_scan_probes, r_rel_tol,
                                      kinks);
    } catch (const OptimizationError& e) {
        throw OptimizationError(std::string(e.what()) + " (T=" +
                                std::to_string(env.temperature) + " K, E=" +
                                std::to_string(env.field) + " V/m, branch=" +
                                (against ? "-" : "+") + ")");
    }
    sol.r_opt = best.x;
    sol.range_min = best.value;
    sol.clamped = false;
    return sol;
}

double hop_current(const Environment& env, HopBranch branch, const VrhParams& params) {
    const HopSolution sol = minimize_range(env, branch, params);
    const double p_hop = std::exp(-sol.range_min);
    return 2.0 * si.e * params.gamma * params.g_f * si.k_B * env.temperature * sol.r_opt * p_hop;
}

double hopping_conductivity(const Environment& env, const VrhParams& params, double e_switch) {
    env.validate();
    if (!(e_switch > 0.0))
        throw InvalidInputError("hopping_conductivity: e_switch must be positive");
    Environment ev = env;
    ev.field = std::max(env.field, e_switch);
    const double j_with = hop_current(ev, HopBranch::with_field, params);
    const double j_against = hop_current(ev, HopBranch::against_field, params);
    return std::abs(j_with - j_against) / ev.field;
}

double loss_tangent_model(const Environment& env, const VrhParams& params, double e_switch) {
    env.validate();
    params.validate();
    const double sigma_h = params.gamma > 0.0 ? hopping_conductivity(env, params, e_switch) : 0.0;
    return params.tls_loss + (sigma_h + params.sigma0) / (env.omega * si.eps0 * env.eps_r);
}

double sinh_low_field_reference(const Environment& env, const VrhParams& params) {
    env.validate();
    params.validate();
    Environment zero_field = env;
    zero_field.field = 0.0;
    const HopSolution sol = minimize_range(zero_field, HopBranch::against_field, params);
    const double arg = si.e * sol.r_opt * env.field / (si.k_B * env.temperature);
    return std::sinh(arg);
}

} // namespace losstan
