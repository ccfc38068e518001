#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "losstan/budget.hpp"
#include "losstan/constants.hpp"
#include "losstan/errors.hpp"

namespace losstan {

// Free-form run annotations carried alongside a trace.
struct TraceMeta {
    std::optional<double> temperature_k;
    std::optional<double> gain_db;  // removed from powers before field conversion
    std::optional<double> input_power_dbm;
    std::map<std::string, std::string> extra;

    double gain() const { return gain_db.value_or(0.0); }
};

// Time-stamped transmitted-power free decay.
struct RingdownTrace {
    Eigen::VectorXd times;   // s, strictly increasing
    Eigen::VectorXd powers;  // dBm, same length
    double frequency = 0.0;  // resonance frequency [Hz]
    TraceMeta meta;

    double omega() const { return 2.0 * pi * frequency; }
    void validate() const;  // throws InvalidInputError
};

// Loaded-Q estimate from a linear regression of power (dBm) vs time.
struct QEstimate {
    double q_loaded = 0.0;
    double sigma_q = 0.0;        // from the slope's regression variance
    double slope = 0.0;          // dB/s, negative for a decaying trace
    Eigen::Index window_begin = 0;
    Eigen::Index window_end = 0;  // half-open [begin, end)
};

// Field proportionality factor and output-antenna external Q.
struct CouplingCalibration {
    double kappa = 822.0;  // V m^-1 W^-1/2
    double q2 = 6.5e11;
};

// Regression window: an explicit index range, or a window of `width` points
// centered on the sample whose derived field is nearest `target_field`.
struct WindowSpec {
    enum class Mode { index_range, field_centered };
    Mode mode = Mode::field_centered;
    Eigen::Index begin = 0;
    Eigen::Index end = 0;
    double target_field = 5.0;  // V/m
    int width = 200;

    static WindowSpec indices(Eigen::Index begin, Eigen::Index end) {
        WindowSpec w;
        w.mode = Mode::index_range;
        w.begin = begin;
        w.end = end;
        return w;
    }
    static WindowSpec centered_on_field(double target_field, int width) {
        WindowSpec w;
        w.mode = Mode::field_centered;
        w.target_field = target_field;
        w.width = width;
        return w;
    }
};

// On-sample peak field from transmitted power: E = kappa sqrt(P_t Q2).
double field_from_power(double p_t_watts, const CouplingCalibration& cal);

// Mean photon number from the on-sample field: n = (E / (kappa omega))^2 / hbar.
double photons_from_field(double e_si, const CouplingCalibration& cal, double omega);

// Resolve a window spec to a concrete [begin, end) index range.
std::pair<Eigen::Index, Eigen::Index> resolve_window(const RingdownTrace& trace,
                                                     const WindowSpec& window,
                                                     const CouplingCalibration& cal);

// Q_L = -10 omega / (ln10 * dP_t/dt) with dP_t/dt from an ordinary
// least-squares line fit of power (dBm) vs time over the window.
QEstimate extract_q_loaded(const RingdownTrace& trace, const WindowSpec& window,
                           const CouplingCalibration& cal = {});

struct ParametricOptions {
    int window_width = 200;
    int stride = 50;
    // Windows whose center power sits below (tail mean + margin) are treated
    // as noise floor and skipped. Negative margin disables the cutoff.
    double noise_floor_margin_db = 3.0;
};

// Loss-vs-field curve from sliding-window local slopes, ordered by
// decreasing field.
struct ParametricCurve {
    struct Sample {
        double field = 0.0;  // V/m, at the window-center sample
        double loss = 0.0;   // 1/Q_Si
        double sigma = 0.0;
    };
    std::vector<Sample> samples;
    int skipped_nondecaying = 0;
    int skipped_below_floor = 0;
    int skipped_inconsistent = 0;
};

ParametricCurve parametric_loss_vs_field(const RingdownTrace& trace,
                                         const CouplingCalibration& cal,
                                         const QBudget& budget, const Participation& part,
                                         const ParametricOptions& options = {});

} // namespace losstan
