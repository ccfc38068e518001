#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "losstan/budget.hpp"
#include "losstan/fitting.hpp"
#include "losstan/ringdown.hpp"

namespace losstan {

// Full analysis configuration: flat key = value text file with '#' comments
// and unit-bearing key names. Defaults describe the reference setup
// (2.6 GHz TM010 niobium cavity with a silicon strip sample).
struct RunConfig {
    double frequency_hz = 2.6e9;
    CouplingCalibration cal{};       // kappa_v_per_m_sqrtw, q2
    QBudget budget{infinite_q, {}, {}, 5.8e9, 6.5e11};  // q0 scalar/table, q1, q2
    Participation part{};            // p_si, p_sio2, rel_err_p_si, q_sio2_inv
    double eps_r = 11.5;
    double tls_loss = 0.0;
    double gain_db = 0.0;            // fallback when a trace carries none
    int window_points = 200;
    double target_field_v_per_m = 5.0;
    int parametric_stride = 50;
    double noise_floor_margin_db = 3.0;
    double e_fit_v_per_m = 5.0;
    double oxide_ratio_threshold = 100.0;
    // Fit controls; initial values and bounds are stored inside fit.
    FitConfig fit{};
};

RunConfig load_run_config(const std::filesystem::path& path);

// Apply the shared RunConfig knobs onto the fit configuration.
FitConfig make_fit_config(const RunConfig& config);

// Trace files: '# key = value' comment headers carrying run metadata
// (frequency_hz, temperature_k, gain_db, input_power_dbm), then a
// 'time_s,power_dbm' header line and comma-separated samples.
void write_trace_csv(const std::filesystem::path& path, const RingdownTrace& trace);
RingdownTrace read_trace_csv(const std::filesystem::path& path);

// Loss tables: 'temperature_k,field_v_per_m,loss,sigma[,status]'. Reading
// accepts extra columns and skips rows whose status is not "ok".
void write_loss_points_csv(const std::filesystem::path& path,
                           const std::vector<LossPoint>& points,
                           const std::vector<std::string>* status = nullptr);
std::vector<LossPoint> read_loss_points_csv(const std::filesystem::path& path);

// Two-column Q0 table: temperature_k,q0.
void load_q0_table(const std::filesystem::path& path, QBudget& budget);

// Axis grammar for --grid: "value" | "lo:hi:count" | "lo:hi:count:log".
std::vector<double> parse_axis(const std::string& spec);

// Structured plain-text report: sections of key = value pairs and embedded
// CSV tables. Human-readable and machine-parsable.
class Report {
public:
    void section(const std::string& name);
    void kv(const std::string& key, const std::string& value);
    void kv(const std::string& key, double value);
    void kv(const std::string& key, long value);
    void kv(const std::string& key, bool value);
    void table(const std::string& header, const std::vector<std::string>& rows);
    const std::string& str() const { return text_; }
    void write(const std::filesystem::path& path) const;

private:
    std::string text_;
};

std::string format_double(double value);

} // namespace losstan
