#include "losstan/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "losstan/units.hpp"

namespace losstan {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& text, const std::string& where) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity") return infinite_q;
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError(where + ": cannot parse number '" + t + "'");
    }
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, delim)) out.push_back(item);
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

// Parse "key = value" and "key: value" comment metadata.
bool parse_kv(const std::string& text, std::string& key, std::string& value) {
    const std::size_t eq = text.find_first_of("=:");
    if (eq == std::string::npos) return false;
    key = trim(text.substr(0, eq));
    value = trim(text.substr(eq + 1));
    return !key.empty();
}

} // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("config: cannot open " + path.string());

    RunConfig c;
    std::map<std::string, std::function<void(double)>> num_keys = {
        {"frequency_hz", [&](double v) { c.frequency_hz = v; }},
        {"kappa_v_per_m_sqrtw", [&](double v) { c.cal.kappa = v; }},
        {"q0", [&](double v) { c.budget.q0 = v; }},
        {"q1", [&](double v) { c.budget.q1 = v; }},
        {"q2", [&](double v) { c.budget.q2 = v; c.cal.q2 = v; }},
        {"rel_err_q0", [&](double v) { c.budget.rel_err_q0 = v; }},
        {"rel_err_q1", [&](double v) { c.budget.rel_err_q1 = v; }},
        {"rel_err_q2", [&](double v) { c.budget.rel_err_q2 = v; }},
        {"p_si", [&](double v) { c.part.p_si = v; }},
        {"p_sio2", [&](double v) { c.part.p_sio2 = v; }},
        {"rel_err_p_si", [&](double v) { c.part.rel_err_p_si = v; }},
        {"q_sio2_inv", [&](double v) { c.part.q_sio2_inv = v; }},
        {"eps_r", [&](double v) { c.eps_r = v; }},
        {"tls_loss", [&](double v) { c.tls_loss = v; }},
        {"gain_db", [&](double v) { c.gain_db = v; }},
        {"window_points", [&](double v) { c.window_points = static_cast<int>(v); }},
        {"target_field_v_per_m", [&](double v) { c.target_field_v_per_m = v; }},
        {"parametric_stride", [&](double v) { c.parametric_stride = static_cast<int>(v); }},
        {"noise_floor_margin_db", [&](double v) { c.noise_floor_margin_db = v; }},
        {"e_fit_v_per_m", [&](double v) { c.e_fit_v_per_m = v; }},
        {"oxide_ratio_threshold", [&](double v) { c.oxide_ratio_threshold = v; }},
        {"fit_initial_alpha_per_m", [&](double v) { c.fit.initial.alpha = v; }},
        {"fit_initial_gamma_hz", [&](double v) { c.fit.initial.gamma = v; }},
        {"fit_initial_g_f_per_ev_cm3", [&](double v) { c.fit.initial.g_f = dos_to_si(v); }},
        {"fit_initial_sigma0_s_per_m", [&](double v) { c.fit.initial.sigma0 = v; }},
        {"fit_alpha_min_per_m", [&](double v) { c.fit.lower.alpha = v; }},
        {"fit_alpha_max_per_m", [&](double v) { c.fit.upper.alpha = v; }},
        {"fit_gamma_min_hz", [&](double v) { c.fit.lower.gamma = v; }},
        {"fit_gamma_max_hz", [&](double v) { c.fit.upper.gamma = v; }},
        {"fit_g_f_min_per_ev_cm3", [&](double v) { c.fit.lower.g_f = dos_to_si(v); }},
        {"fit_g_f_max_per_ev_cm3", [&](double v) { c.fit.upper.g_f = dos_to_si(v); }},
        {"fit_sigma0_min_s_per_m", [&](double v) { c.fit.lower.sigma0 = std::max(v, 1e-12); }},
        {"fit_sigma0_max_s_per_m", [&](double v) { c.fit.upper.sigma0 = v; }},
        {"fit_max_iterations", [&](double v) { c.fit.max_iterations = static_cast<int>(v); }},
        {"fit_tolerance", [&](double v) { c.fit.tolerance = v; }},
        {"fit_restarts", [&](double v) { c.fit.restarts = static_cast<int>(v); }},
        {"fit_seed", [&](double v) { c.fit.seed = static_cast<std::uint64_t>(v); }},
    };

    std::string line;
    int line_no = 0;
    std::filesystem::path q0_table;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        std::string key, value;
        if (!parse_kv(stripped, key, value))
            throw InvalidInputError("config " + path.string() + ":" + std::to_string(line_no) +
                                    ": expected 'key = value', got '" + stripped + "'");
        if (key == "q0_table_file") {
            q0_table = path.parent_path() / value;
            continue;
        }
        const auto it = num_keys.find(key);
        if (it == num_keys.end())
            throw InvalidInputError("config " + path.string() + ":" + std::to_string(line_no) +
                                    ": unknown key '" + key + "'");
        it->second(parse_number(value, "config " + path.string() + ":" + std::to_string(line_no)));
    }
    if (!q0_table.empty()) load_q0_table(q0_table, c.budget);
    return c;
}

FitConfig make_fit_config(const RunConfig& config) {
    FitConfig fit = config.fit;
    fit.e_fit = config.e_fit_v_per_m;
    fit.omega = 2.0 * pi * config.frequency_hz;
    fit.eps_r = config.eps_r;
    fit.tls_loss = config.tls_loss;
    return fit;
}

// ---------------------------------------------------------------------------
// Trace files
// ---------------------------------------------------------------------------

void write_trace_csv(const std::filesystem::path& path, const RingdownTrace& trace) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("trace: cannot write " + path.string());
    out << "# frequency_hz = " << format_double(trace.frequency) << "\n";
    if (trace.meta.temperature_k)
        out << "# temperature_k = " << format_double(*trace.meta.temperature_k) << "\n";
    if (trace.meta.gain_db)
        out << "# gain_db = " << format_double(*trace.meta.gain_db) << "\n";
    if (trace.meta.input_power_dbm)
        out << "# input_power_dbm = " << format_double(*trace.meta.input_power_dbm) << "\n";
    for (const auto& [k, v] : trace.meta.extra) out << "# " << k << " = " << v << "\n";
    out << "time_s,power_dbm\n";
    for (Eigen::Index i = 0; i < trace.times.size(); ++i)
        out << format_double(trace.times(i)) << "," << format_double(trace.powers(i)) << "\n";
    if (!out) throw InvalidInputError("trace: write failed for " + path.string());
}

RingdownTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("trace: cannot open " + path.string());

    RingdownTrace trace;
    std::vector<double> times, powers;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            std::string key, value;
            if (parse_kv(trim(stripped.substr(1)), key, value)) {
                if (key == "frequency_hz")
                    trace.frequency = parse_number(value, where);
                else if (key == "temperature_k")
                    trace.meta.temperature_k = parse_number(value, where);
                else if (key == "gain_db")
                    trace.meta.gain_db = parse_number(value, where);
                else if (key == "input_power_dbm")
                    trace.meta.input_power_dbm = parse_number(value, where);
                else
                    trace.meta.extra[key] = value;
            }
            continue;
        }
        if (!saw_header) {
            const auto cols = split(stripped, ',');
            if (cols.size() < 2 || trim(cols[0]) != "time_s" || trim(cols[1]) != "power_dbm")
                throw InvalidInputError(where + ": expected header 'time_s,power_dbm', got '" +
                                        stripped + "'");
            saw_header = true;
            continue;
        }
        const auto cols = split(stripped, ',');
        if (cols.size() != 2)
            throw InvalidInputError(where + ": expected 2 comma-separated values, got " +
                                    std::to_string(cols.size()));
        times.push_back(parse_number(cols[0], where));
        powers.push_back(parse_number(cols[1], where));
    }
    if (!saw_header)
        throw InvalidInputError(path.string() + ":" + std::to_string(line_no) +
                                ": missing 'time_s,power_dbm' header (empty file?)");
    if (times.size() < 3)
        throw InvalidInputError(path.string() + ": need at least 3 samples, got " +
                                std::to_string(times.size()));
    trace.times = Eigen::Map<Eigen::VectorXd>(times.data(), static_cast<Eigen::Index>(times.size()));
    trace.powers =
        Eigen::Map<Eigen::VectorXd>(powers.data(), static_cast<Eigen::Index>(powers.size()));
    trace.validate();
    return trace;
}

// ---------------------------------------------------------------------------
// Loss tables and Q0 tables
// ---------------------------------------------------------------------------

void write_loss_points_csv(const std::filesystem::path& path,
                           const std::vector<LossPoint>& points,
                           const std::vector<std::string>* status) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("loss table: cannot write " + path.string());
    out << "temperature_k,field_v_per_m,loss,sigma" << (status ? ",status" : "") << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        out << format_double(p.temperature) << "," << format_double(p.field) << ","
            << format_double(p.loss) << "," << format_double(p.sigma);
        if (status) out << "," << (*status)[i];
        out << "\n";
    }
}

std::vector<LossPoint> read_loss_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("loss table: cannot open " + path.string());
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    std::vector<LossPoint> points;
    int i_t = -1, i_f = -1, i_l = -1, i_s = -1, i_status = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto cols = split(stripped, ',');
        if (header.empty()) {
            header = cols;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const std::string name = trim(cols[i]);
                if (name == "temperature_k") i_t = static_cast<int>(i);
                if (name == "field_v_per_m") i_f = static_cast<int>(i);
                if (name == "loss") i_l = static_cast<int>(i);
                if (name == "sigma") i_s = static_cast<int>(i);
                if (name == "status") i_status = static_cast<int>(i);
            }
            if (i_t < 0 || i_l < 0)
                throw InvalidInputError(where +
                                        ": header must name temperature_k and loss columns");
            continue;
        }
        if (cols.size() != header.size())
            throw InvalidInputError(where + ": expected " + std::to_string(header.size()) +
                                    " columns, got " + std::to_string(cols.size()));
        if (i_status >= 0 && trim(cols[static_cast<std::size_t>(i_status)]) != "ok") continue;
        LossPoint p;
        p.temperature = parse_number(cols[static_cast<std::size_t>(i_t)], where);
        if (i_f >= 0) p.field = parse_number(cols[static_cast<std::size_t>(i_f)], where);
        p.loss = parse_number(cols[static_cast<std::size_t>(i_l)], where);
        if (i_s >= 0) p.sigma = parse_number(cols[static_cast<std::size_t>(i_s)], where);
        points.push_back(p);
    }
    if (header.empty()) throw InvalidInputError(path.string() + ": empty loss table");
    return points;
}

void load_q0_table(const std::filesystem::path& path, QBudget& budget) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("q0 table: cannot open " + path.string());
    std::vector<double> ts, qs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        if (line_no == 1 && stripped.find("temperature") != std::string::npos) continue;
        const auto cols = split(stripped, ',');
        if (cols.size() != 2)
            throw InvalidInputError(where + ": expected 'temperature_k,q0'");
        ts.push_back(parse_number(cols[0], where));
        qs.push_back(parse_number(cols[1], where));
    }
    if (ts.empty()) throw InvalidInputError(path.string() + ": empty q0 table");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]))
            throw InvalidInputError(path.string() + ": temperatures must be strictly increasing");
    budget.q0_temperatures =
        Eigen::Map<Eigen::VectorXd>(ts.data(), static_cast<Eigen::Index>(ts.size()));
    budget.q0_values = Eigen::Map<Eigen::VectorXd>(qs.data(), static_cast<Eigen::Index>(qs.size()));
}

// ---------------------------------------------------------------------------
// Grid axis grammar
// ---------------------------------------------------------------------------

std::vector<double> parse_axis(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() == 1) return {parse_number(parts[0], "axis '" + spec + "'")};
    if (parts.size() != 3 && parts.size() != 4)
        throw InvalidInputError("axis '" + spec + "': expected value | lo:hi:count[:log]");
    const double lo = parse_number(parts[0], "axis '" + spec + "'");
    const double hi = parse_number(parts[1], "axis '" + spec + "'");
    const double count_d = parse_number(parts[2], "axis '" + spec + "'");
    const int count = static_cast<int>(count_d);
    bool log_spaced = false;
    if (parts.size() == 4) {
        if (trim(parts[3]) == "log")
            log_spaced = true;
        else if (trim(parts[3]) != "lin")
            throw InvalidInputError("axis '" + spec + "': spacing must be lin or log");
    }
    if (count < 2 || hi <= lo)
        throw InvalidInputError("axis '" + spec + "': need hi > lo and count >= 2");
    if (log_spaced && lo <= 0.0)
        throw InvalidInputError("axis '" + spec + "': log spacing needs positive bounds");
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double u = double(i) / double(count - 1);
        values[static_cast<std::size_t>(i)] =
            log_spaced ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)))
                       : lo + u * (hi - lo);
    }
    return values;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

void Report::section(const std::string& name) {
    if (!text_.empty()) text_ += "\n";
    text_ += "[" + name + "]\n";
}

void Report::kv(const std::string& key, const std::string& value) {
    text_ += key + " = " + value + "\n";
}

void Report::kv(const std::string& key, double value) { kv(key, format_double(value)); }

void Report::kv(const std::string& key, long value) { kv(key, std::to_string(value)); }

void Report::kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }

void Report::table(const std::string& header, const std::vector<std::string>& rows) {
    text_ += header + "\n";
    for (const auto& r : rows) text_ += r + "\n";
}

void Report::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("report: cannot write " + path.string());
    out << text_;
}

} // namespace losstan
