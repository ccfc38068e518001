// Acceptance suite: one self-contained check per release criterion, each
// printing a PASS/FAIL line with the measured numbers. Run all criteria with
// no arguments or a single one with --criterion N. The process exit code is
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "losstan/budget.hpp"
#include "losstan/fitting.hpp"
#include "losstan/ringdown.hpp"
#include "losstan/synth.hpp"
#include "losstan/units.hpp"
#include "losstan/vrh.hpp"

using namespace losstan;

namespace {

struct Criterion {
    int number;
    std::string name;
    double runtime_limit_s;
    std::function<bool(std::ostringstream&)> check;
};

VrhParams published_fit_params() {
    VrhParams p;
    p.alpha = 1.0 / 1.05e-6;          // alpha^-1 = 1.05 um
    p.gamma = 11.4e12;                // 11.4 THz
    p.g_f = dos_to_si(1.33e13);       // 1.33e13 eV^-1 cm^-3
    p.sigma0 = 0.52e-6;               // 0.52 uS/m
    return p;
}

Environment reference_env(double t, double e) {
    return Environment{t, e, 2.0 * pi * 2.6e9, 11.5};
}

// 1. Model at the published parameters reproduces the measured loss tangent
//    2.7e-6 at 74 mK and 5 V/m within +/-35%.
bool criterion_model_at_reference(std::ostringstream& detail) {
    const double loss = loss_tangent_model(reference_env(0.074, 5.0), published_fit_params());
    const double target = 2.7e-6;
    const double rel = std::abs(loss - target) / target;
    detail << "loss(74 mK, 5 V/m) = " << loss << ", target " << target << " +/-35%, deviation "
           << rel * 100.0 << "%";
    return rel <= 0.35;
}

// 2. The same model curve has exactly one interior minimum, located in
//    [0.06, 0.12] K, over T in [0.05, 1] K.
bool criterion_minimum_location(std::ostringstream& detail) {
    const VrhParams p = published_fit_params();
    const int n = 200;
    std::vector<double> ts(n), loss(n);
    for (int i = 0; i < n; ++i) {
        ts[i] = 0.05 * std::pow(20.0, double(i) / (n - 1));
        loss[i] = loss_tangent_model(reference_env(ts[i], 5.0), p);
    }
    int minima = 0;
    double at = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        if (loss[i] < loss[i - 1] && loss[i] <= loss[i + 1]) {
            ++minima;
            at = ts[i];
        }
    }
    detail << minima << " interior minimum(s)";
    if (minima == 1) detail << " at T = " << at << " K (required in [0.06, 0.12])";
    return minima == 1 && at >= 0.06 && at <= 0.12;
}

// 3. Mott limit: ln sigma_h vs T^(-1/4) is linear with R^2 >= 0.999 over
//    T in [0.2, 2] K on the stabilized low-field path.
bool criterion_mott_limit(std::ostringstream& detail) {
    const VrhParams p = published_fit_params();
    const int n = 40;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        const double t = 0.2 * std::pow(10.0, double(i) / (n - 1));
        x[i] = std::pow(t, -0.25);
        y[i] = std::log(hopping_conductivity(reference_env(t, 0.0), p));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (int i = 0; i < n; ++i) {
        ss_res += std::pow(y[i] - slope * x[i] - intercept, 2);
        ss_tot += std::pow(y[i] - sy / n, 2);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    detail << "R^2 = " << r2 << " (required >= 0.999), slope " << slope;
    return r2 >= 0.999;
}

// 4. Field trend at 0.2 K: loss monotone non-decreasing over E in [1, 100]
//    V/m and flat within 10% across the Ohmic sub-range.
bool criterion_field_trend(std::ostringstream& detail) {
    const VrhParams p = published_fit_params();
    const int n = 120;
    std::vector<double> es(n), loss(n);
    for (int i = 0; i < n; ++i) {
        es[i] = std::pow(10.0, 2.0 * double(i) / (n - 1));  // [1, 100]
        loss[i] = loss_tangent_model(reference_env(0.2, es[i]), p);
    }
    int violations = 0;
    double worst_drop = 0.0, drop_at = 0.0;
    for (int i = 1; i < n; ++i) {
        if (loss[i] < loss[i - 1] * (1.0 - 1e-12)) {
            ++violations;
            const double drop = loss[i - 1] / loss[i];
            if (drop > worst_drop) {
                worst_drop = drop;
                drop_at = es[i];
            }
        }
    }
    // Ohmic sub-range: contiguous low-field stretch within 10% of loss(1 V/m)
    double ohmic_hi = es[0];
    double lo = loss[0], hi = loss[0];
    for (int i = 1; i < n; ++i) {
        lo = std::min(lo, loss[i]);
        hi = std::max(hi, loss[i]);
        if ((hi - lo) / lo > 0.10) break;
        ohmic_hi = es[i];
    }
    const bool monotone = violations == 0;
    detail << violations << " monotonicity violation(s)";
    if (!monotone) detail << " (worst: x" << worst_drop << " drop at E = " << drop_at << " V/m)";
    detail << "; Ohmic sub-range up to " << ohmic_hi << " V/m flat within 10%";
    return monotone && ohmic_hi >= es[0];
}

// 5. Numerical zero-field minimizer agrees with the closed form
//    r* = (3c/(2 alpha))^(1/4) to 1e-6 relative on a 5x5 parameter grid.
bool criterion_closed_form_minimizer(std::ostringstream& detail) {
    VrhParams p = published_fit_params();
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double t = 0.05 * std::pow(20.0, i / 4.0);
        for (int j = 0; j < 5; ++j) {
            p.g_f = 1e36 * std::pow(1e3, j / 4.0);
            const HopSolution sol = minimize_range(reference_env(t, 0.0),
                                                   HopBranch::against_field, p);
            const double c = 81.0 / (256.0 * pi * p.g_f) / (si.k_B * t);
            const double r_star = std::pow(3.0 * c / (2.0 * p.alpha), 0.25);
            worst = std::max(worst, std::abs(sol.r_opt - r_star) / r_star);
        }
    }
    detail << "worst relative deviation " << worst << " over 25 configurations (required <= 1e-6)";
    return worst <= 1e-6;
}

// 6. Ring-down inverse pair: exact recovery without noise, <= 0.5% with
//    0.05 dB noise on 2000 points over three decay times, 100 seeds.
bool criterion_ringdown_inverse_pair(std::ostringstream& detail) {
    SynthSpec clean;
    clean.frequency = 2.6e9;
    clean.p0_dbm = -20.0;
    clean.duration = 0.05;
    clean.sample_rate = 4e4;
    clean.seed = 1;
    const double q_exact = 1e9;
    const RingdownTrace noiseless = synth_ringdown(q_exact, clean);
    const QEstimate exact =
        extract_q_loaded(noiseless, WindowSpec::indices(0, noiseless.times.size()));
    const double exact_rel = std::abs(exact.q_loaded - q_exact) / q_exact;

    const double q_true = 3e8;
    SynthSpec noisy;
    noisy.frequency = 2.6e9;
    noisy.p0_dbm = -20.0;
    noisy.duration = 3.0 * q_true / (2.0 * pi * 2.6e9);
    noisy.sample_rate = 2000.0 / noisy.duration;
    noisy.noise_db = 0.05;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        noisy.seed = seed;
        const RingdownTrace trace = synth_ringdown(q_true, noisy);
        const QEstimate est = extract_q_loaded(trace, WindowSpec::indices(0, trace.times.size()));
        worst = std::max(worst, std::abs(est.q_loaded - q_true) / q_true);
    }
    detail << "noiseless relative error " << exact_rel << " (<= 1e-9); worst noisy recovery "
           << worst * 100.0 << "% over 100 seeds (<= 0.5%)";
    return exact_rel <= 1e-9 && worst <= 0.005;
}

// 7. Budget arithmetic at the published external Qs and participation.
bool criterion_budget_arithmetic(std::ostringstream& detail) {
    QBudget budget;
    budget.q1 = 5.8e9;
    budget.q2 = 6.5e11;
    Participation part;
    part.p_si = 9e-4;
    const double loss = silicon_loss(sample_inverse_q(3.0e8, 3.0e9, budget), part);
    const double target = 3.140e-6;
    const double rel = std::abs(loss - target) / target;
    detail << "1/Q_Si = " << loss << ", target " << target << ", deviation " << rel;
    return rel <= 1e-4;
}

// 8. Analytic error propagation within 2% of a 1e5-sample Monte-Carlo
//    standard deviation for the 10%/10%/10%/25% error model.
bool criterion_error_propagation(std::ostringstream& detail) {
    QBudget budget;
    budget.q1 = 5.8e9;
    budget.q2 = 6.5e11;   // rel errors default to 10%
    Participation part;   // rel_err_p_si = 25%
    const double q_l = 3.0e8, q0 = 3.0e9, sigma_q_l = 0.01 * q_l;

    const double analytic = propagate_loss_error(q_l, sigma_q_l, q0, budget, part);

    std::mt19937_64 rng(7081);
    std::normal_distribution<double> z(0.0, 1.0);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double inv_l = 1.0 / q_l * (1.0 + 0.01 * z(rng));
        const double inv_0 = 1.0 / q0 * (1.0 + budget.rel_err_q0 * z(rng));
        const double inv_1 = 1.0 / budget.q1 * (1.0 + budget.rel_err_q1 * z(rng));
        const double inv_2 = 1.0 / budget.q2 * (1.0 + budget.rel_err_q2 * z(rng));
        const double inv_p = 1.0 / part.p_si * (1.0 + part.rel_err_p_si * z(rng));
        const double sample = (inv_l - inv_0 - inv_1 - inv_2) * inv_p;
        sum += sample;
        sum2 += sample * sample;
    }
    const double mean = sum / n;
    const double mc = std::sqrt((sum2 - n * mean * mean) / (n - 1));
    const double rel = std::abs(analytic - mc) / mc;
    detail << "analytic " << analytic << " vs Monte-Carlo " << mc << ", deviation "
           << rel * 100.0 << "% (<= 2%)";
    return rel <= 0.02;
}

// 9. Fit roundtrip: 30-point synthetic curves at the published parameters
//    with 5% noise; every parameter recovered within 20% (log distance),
//    at least 9 of 10 seeds.
bool criterion_fit_roundtrip(std::ostringstream& detail) {
    const VrhParams truth = published_fit_params();
    std::vector<double> grid;
    for (int i = 0; i < 30; ++i) grid.push_back(0.07 * std::pow(1.0 / 0.07, i / 29.0));

    const double tol = std::log10(1.2);
    int successes = 0;
    int per_param[4] = {0, 0, 0, 0};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto points = synth_loss_curve(truth, reference_env(0.1, 5.0), grid, 0.05, seed);
        FitConfig config;
        config.initial.alpha = truth.alpha * (seed % 2 ? 3.0 : 1.0 / 3.0);
        config.initial.gamma = truth.gamma * (seed % 2 ? 1.0 / 3.0 : 3.0);
        config.initial.g_f = truth.g_f * (seed % 3 ? 3.0 : 1.0 / 3.0);
        config.initial.sigma0 = truth.sigma0 * (seed % 3 ? 1.0 / 3.0 : 3.0);
        config.seed = seed;
        const FitResult result = fit_vrh(points, config);
        const bool hit[4] = {
            std::abs(std::log10(result.params.alpha / truth.alpha)) <= tol,
            std::abs(std::log10(result.params.gamma / truth.gamma)) <= tol,
            std::abs(std::log10(result.params.g_f / truth.g_f)) <= tol,
            std::abs(std::log10(result.params.sigma0 / truth.sigma0)) <= tol};
        for (int i = 0; i < 4; ++i)
            if (hit[i]) ++per_param[i];
        if (result.converged && hit[0] && hit[1] && hit[2] && hit[3]) ++successes;
    }
    detail << successes << "/10 seeds recovered every parameter within 20% (required >= 9); "
           << "per-parameter hits alpha " << per_param[0] << "/10, gamma " << per_param[1]
           << "/10, g_f " << per_param[2] << "/10, sigma0 " << per_param[3] << "/10";
    return successes >= 9;
}

// 10. Field-parametric pipeline roundtrip: a prescribed monotonic loss law
//     is recovered within 2% over one decade of field.
bool criterion_parametric_roundtrip(std::ostringstream& detail) {
    QBudget budget;
    budget.q0 = 3e9;
    budget.q1 = 5.8e9;
    budget.q2 = 6.5e11;
    Participation part;
    CouplingCalibration cal;
    auto law = [](double e_field) { return 2e-6 * (1.0 + e_field / 2e4); };

    SynthSpec spec;
    spec.frequency = 2.6e9;
    spec.p0_dbm = -35.0;
    spec.duration = 0.25;
    spec.sample_rate = 4e5;
    spec.seed = 1;
    const RingdownTrace trace = synth_ringdown_field_dependent(law, budget, part, cal, spec, 0.1);

    ParametricOptions opts;
    opts.window_width = 800;
    opts.stride = 400;
    const ParametricCurve curve = parametric_loss_vs_field(trace, cal, budget, part, opts);

    // the checked decade: fields where windows resolve the law comfortably
    const double decade_hi = 3e4, decade_lo = 3e3;
    double worst = 0.0;
    int checked = 0;
    for (const auto& s : curve.samples) {
        if (s.field > decade_hi || s.field < decade_lo) continue;
        worst = std::max(worst, std::abs(s.loss - law(s.field)) / law(s.field));
        ++checked;
    }
    detail << "worst deviation " << worst * 100.0 << "% across " << checked
           << " windows in [" << decade_lo << ", " << decade_hi << "] V/m (<= 2%)";
    return checked >= 10 && worst <= 0.02;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    const std::vector<Criterion> criteria = {
        {1, "model at published parameters", 1.0, criterion_model_at_reference},
        {2, "loss minimum location", 10.0, criterion_minimum_location},
        {3, "Mott T^(-1/4) limit", 10.0, criterion_mott_limit},
        {4, "field trend at 0.2 K", 10.0, criterion_field_trend},
        {5, "closed-form minimizer agreement", 5.0, criterion_closed_form_minimizer},
        {6, "ring-down inverse pair", 30.0, criterion_ringdown_inverse_pair},
        {7, "budget arithmetic", 1.0, criterion_budget_arithmetic},
        {8, "error propagation vs Monte-Carlo", 30.0, criterion_error_propagation},
        {9, "fit roundtrip", 600.0, criterion_fit_roundtrip},
        {10, "field-parametric pipeline roundtrip", 60.0, criterion_parametric_roundtrip},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.number != only) continue;
        std::ostringstream detail;
        bool pass = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            pass = criterion.check(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < criterion.runtime_limit_s;
        if (!in_time) detail << " [exceeded " << criterion.runtime_limit_s << " s budget]";
        const bool ok = pass && in_time;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion.number << " ("
                  << criterion.name << "): " << detail.str() << " [" << seconds << " s]\n";
        if (!ok) ++failures;
    }
    return failures;
}
