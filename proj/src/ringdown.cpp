#include "losstan/ringdown.hpp"

#include <algorithm>
#include <cmath>

#include "losstan/units.hpp"

namespace losstan {

void RingdownTrace::validate() const {
    if (times.size() != powers.size())
        throw InvalidInputError("trace: times and powers differ in length");
    if (times.size() < 3)
        throw InvalidInputError("trace: need at least 3 samples");
    if (!(frequency > 0.0))
        throw InvalidInputError("trace: frequency must be positive");
    for (Eigen::Index i = 1; i < times.size(); ++i)
        if (!(times(i) > times(i - 1)))
            throw InvalidInputError("trace: times must be strictly increasing (sample " +
                                    std::to_string(i) + ")");
}

double field_from_power(double p_t_watts, const CouplingCalibration& cal) {
    if (!(p_t_watts >= 0.0))
        throw InvalidInputError("field_from_power: power must be non-negative");
    if (!(cal.kappa > 0.0) || !(cal.q2 > 0.0))
        throw InvalidInputError("field_from_power: calibration must be positive");
    return cal.kappa * std::sqrt(p_t_watts * cal.q2);
}

double photons_from_field(double e_si, const CouplingCalibration& cal, double omega) {
    if (!(e_si >= 0.0))
        throw InvalidInputError("photons_from_field: field must be non-negative");
    if (!(omega > 0.0))
        throw InvalidInputError("photons_from_field: omega must be positive");
    if (!(cal.kappa > 0.0))
        throw InvalidInputError("photons_from_field: calibration must be positive");
    const double amp = e_si / (cal.kappa * omega);
    return amp * amp / si.hbar;
}

std::pair<Eigen::Index, Eigen::Index> resolve_window(const RingdownTrace& trace,
                                                     const WindowSpec& window,
                                                     const CouplingCalibration& cal) {
    const Eigen::Index n = trace.times.size();
    if (window.mode == WindowSpec::Mode::index_range) {
        if (window.begin < 0 || window.end > n || window.end - window.begin < 3)
            throw InvalidInputError("window: index range [" + std::to_string(window.begin) +
                                    ", " + std::to_string(window.end) +
                                    ") needs at least 3 in-range points");
        return {window.begin, window.end};
    }
    if (window.width < 3)
        throw InvalidInputError("window: width must be at least 3 points");
    // Pick the sample whose derived field is nearest the target.
    Eigen::Index center = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double watts = dbm_to_watts(trace.powers(i) - trace.meta.gain());
        const double diff = std::abs(field_from_power(watts, cal) - window.target_field);
        if (diff < best) {
            best = diff;
            center = i;
        }
    }
    Eigen::Index begin = center - window.width / 2;
    Eigen::Index end = begin + window.width;
    begin = std::max<Eigen::Index>(0, begin);
    end = std::min(n, end);
    if (end - begin < 3)
        throw InvalidInputError("window: fewer than 3 points around the target field");
    return {begin, end};
}

namespace {

struct LineFit {
    double slope;
    double sigma_slope;
};

// OLS line fit of y vs x with the slope's standard error. Times are centered
// before accumulating to keep the normal equations well conditioned.
LineFit fit_line(const Eigen::Ref<const Eigen::VectorXd>& x,
                 const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::Index n = x.size();
    const double x_mean = x.mean();
    const double y_mean = y.mean();
    const Eigen::ArrayXd dx = x.array() - x_mean;
    const Eigen::ArrayXd dy = y.array() - y_mean;
    const double sxx = (dx * dx).sum();
    const double slope = (dx * dy).sum() / sxx;
    double sigma_slope = 0.0;
    if (n > 2) {
        const double ssr = (dy - slope * dx).square().sum();
        sigma_slope = std::sqrt(std::max(0.0, ssr / double(n - 2) / sxx));
    }
    return {slope, sigma_slope};
}

} // namespace

QEstimate extract_q_loaded(const RingdownTrace& trace, const WindowSpec& window,
                           const CouplingCalibration& cal) {
    trace.validate();
    const auto [begin, end] = resolve_window(trace, window, cal);
    const Eigen::Index n = end - begin;
    const LineFit fit = fit_line(trace.times.segment(begin, n), trace.powers.segment(begin, n));
    if (!(fit.slope < 0.0))
        throw NonDecayingTraceError("extract_q_loaded: fitted slope " +
                                    std::to_string(fit.slope) +
                                    " dB/s is not negative; trace is not decaying");
    const double q = -10.0 * trace.omega() / (std::log(10.0) * fit.slope);
    QEstimate est;
    est.q_loaded = q;
    est.sigma_q = q * (fit.sigma_slope / std::abs(fit.slope));
    est.slope = fit.slope;
    est.window_begin = begin;
    est.window_end = end;
    return est;
}

ParametricCurve parametric_loss_vs_field(const RingdownTrace& trace,
                                         const CouplingCalibration& cal,
                                         const QBudget& budget, const Participation& part,
                                         const ParametricOptions& options) {
    trace.validate();
    if (options.window_width < 3)
        throw InvalidInputError("parametric_loss_vs_field: window_width must be >= 3");
    if (options.stride < 1)
        throw InvalidInputError("parametric_loss_vs_field: stride must be >= 1");
    const Eigen::Index n = trace.times.size();
    if (n < options.window_width)
        throw InvalidInputError("parametric_loss_vs_field: trace shorter than one window");
    if (budget.has_table() && !trace.meta.temperature_k)
        throw InvalidInputError(
            "parametric_loss_vs_field: trace lacks a temperature annotation but the "
            "budget tabulates Q0 against temperature");
    const double q0 = q0_at(budget, trace.meta.temperature_k.value_or(0.0));

    double floor_dbm = -std::numeric_limits<double>::infinity();
    if (options.noise_floor_margin_db >= 0.0) {
        const Eigen::Index tail = std::max<Eigen::Index>(1, n / 100);
        floor_dbm = trace.powers.tail(tail).mean() + options.noise_floor_margin_db;
    }

    ParametricCurve curve;
    for (Eigen::Index begin = 0; begin + options.window_width <= n;
         begin += options.stride) {
        const Eigen::Index center = begin + options.window_width / 2;
        if (trace.powers(center) < floor_dbm) {
            ++curve.skipped_below_floor;
            continue;
        }
        QEstimate est;
        try {
            est = extract_q_loaded(trace, WindowSpec::indices(begin, begin + options.window_width),
                                   cal);
        } catch (const NonDecayingTraceError&) {
            ++curve.skipped_nondecaying;
            continue;
        }
        const double watts = dbm_to_watts(trace.powers(center) - trace.meta.gain());
        const double field = field_from_power(watts, cal);
        try {
            const double q_s_inv = sample_inverse_q(est.q_loaded, q0, budget);
            ParametricCurve::Sample s;
            s.field = field;
            s.loss = silicon_loss(q_s_inv, part);
            s.sigma = propagate_loss_error(est.q_loaded, est.sigma_q, q0, budget, part);
            curve.samples.push_back(s);
        } catch (const BudgetInconsistencyError&) {
            ++curve.skipped_inconsistent;
        }
    }
    std::sort(curve.samples.begin(), curve.samples.end(),
              [](const auto& a, const auto& b) { return a.field > b.field; });
    return curve;
}

} // namespace losstan
