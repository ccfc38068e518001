#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "losstan/errors.hpp"

namespace losstan {

// Sentinel for a disabled parasitic channel: 1/inf contributes nothing.
inline constexpr double infinite_q = std::numeric_limits<double>::infinity();

// Parasitic Q-factors of the setup. Q0 is either a scalar or a table of
// (temperature, Q0) pairs with strictly increasing temperatures.
struct QBudget {
    double q0 = infinite_q;
    Eigen::VectorXd q0_temperatures;  // empty -> scalar mode
    Eigen::VectorXd q0_values;
    double q1 = infinite_q;
    double q2 = infinite_q;
    double rel_err_q0 = 0.10;
    double rel_err_q1 = 0.10;
    double rel_err_q2 = 0.10;

    bool has_table() const { return q0_temperatures.size() > 0; }
};

// Participation ratios of the dielectric regions and the fixed oxide loss.
struct Participation {
    double p_si = 9e-4;
    double p_sio2 = 3e-9;
    double rel_err_p_si = 0.25;
    double q_sio2_inv = 5e-3;  // 1/Q_SiO2
};

// One measurement: silicon loss tangent at a temperature and on-sample field.
struct LossPoint {
    double temperature = 0.0;  // K
    double field = 0.0;        // V/m
    double loss = 0.0;         // 1/Q_Si
    double sigma = 0.0;        // standard uncertainty of loss
};

// Intrinsic Q at temperature t. Tables interpolate log-linearly in both
// axes; no silent extrapolation outside the tabulated range.
inline double q0_at(const QBudget& budget, double t) {
    if (!budget.has_table()) return budget.q0;
    if (!(t > 0.0)) throw InvalidInputError("q0_at: temperature must be positive");
    const auto& ts = budget.q0_temperatures;
    const auto& qs = budget.q0_values;
    if (ts.size() != qs.size() || ts.size() < 1)
        throw InvalidInputError("q0_at: malformed Q0 table");
    for (Eigen::Index i = 1; i < ts.size(); ++i)
        if (!(ts(i) > ts(i - 1)))
            throw InvalidInputError("q0_at: table temperatures must be strictly increasing");
    if (t < ts(0) || t > ts(ts.size() - 1))
        throw InvalidInputError("q0_at: temperature " + std::to_string(t) +
                                " K outside table range [" + std::to_string(ts(0)) + ", " +
                                std::to_string(ts(ts.size() - 1)) + "] K");
    if (ts.size() == 1) return qs(0);
    Eigen::Index hi = 1;
    while (hi < ts.size() - 1 && ts(hi) < t) ++hi;
    const Eigen::Index lo = hi - 1;
    const double u = (std::log(t) - std::log(ts(lo))) / (std::log(ts(hi)) - std::log(ts(lo)));
    return std::exp(std::log(qs(lo)) + u * (std::log(qs(hi)) - std::log(qs(lo))));
}

// 1/Q_S: loaded loss with the parasitic channels removed.
inline double sample_inverse_q(double q_l, double q0, const QBudget& budget) {
    if (!(q_l > 0.0) || !(q0 > 0.0) || !(budget.q1 > 0.0) || !(budget.q2 > 0.0))
        throw InvalidInputError("sample_inverse_q: all Q values must be positive");
    const double inv = 1.0 / q_l - 1.0 / q0 - 1.0 / budget.q1 - 1.0 / budget.q2;
    if (!(inv > 0.0))
        throw BudgetInconsistencyError(
            "sample_inverse_q: parasitic losses exceed measured loss (1/Q_S = " +
            std::to_string(inv) + ")");
    return inv;
}

// 1/Q_Si = (1/Q_S) / p_Si.
inline double silicon_loss(double q_s_inv, const Participation& part) {
    if (!(q_s_inv > 0.0))
        throw InvalidInputError("silicon_loss: 1/Q_S must be positive");
    if (!(part.p_si > 0.0) || part.p_si > 1.0)
        throw InvalidInputError("silicon_loss: p_si must be in (0, 1]");
    return q_s_inv / part.p_si;
}

// Equivalent Q of the oxide channel, Q_SiO2 / p_SiO2. Infinite when the
// channel is absent or lossless (fully negligible).
inline double oxide_equivalent_q(const Participation& part) {
    if (!(part.p_sio2 >= 0.0) || !(part.q_sio2_inv >= 0.0))
        throw InvalidInputError("oxide_equivalent_q: participation and loss must be non-negative");
    if (part.p_sio2 == 0.0 || part.q_sio2_inv == 0.0) return infinite_q;
    return 1.0 / (part.p_sio2 * part.q_sio2_inv);
}

// First-order Gaussian propagation of independent errors through
// 1/Q_Si = (1/Q_L - 1/Q0 - 1/Q1 - 1/Q2) / p_Si. sigma_q_l is absolute; the
// budget and participation carry relative uncertainties. Terms are formed as
// rel/(p Q) so disabled (infinite-Q) channels drop out cleanly.
inline double propagate_loss_error(double q_l, double sigma_q_l, double q0,
                                   const QBudget& budget, const Participation& part) {
    if (!(sigma_q_l >= 0.0))
        throw InvalidInputError("propagate_loss_error: sigma_q_l must be non-negative");
    const double q_s_inv = sample_inverse_q(q_l, q0, budget);
    const double loss = silicon_loss(q_s_inv, part);
    const double t_l = sigma_q_l / q_l / (part.p_si * q_l);
    const double t_0 = budget.rel_err_q0 / (part.p_si * q0);
    const double t_1 = budget.rel_err_q1 / (part.p_si * budget.q1);
    const double t_2 = budget.rel_err_q2 / (part.p_si * budget.q2);
    const double t_p = loss * part.rel_err_p_si;
    return std::sqrt(t_l * t_l + t_0 * t_0 + t_1 * t_1 + t_2 * t_2 + t_p * t_p);
}

} // namespace losstan
