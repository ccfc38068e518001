// losstan: ring-down loss-tangent analysis pipeline.
//
// Subcommands: extract-q, loss-curve, vrh-eval, vrh-fit, synth.
// Exit codes: 0 success, 2 input/config error, 3 non-decaying trace,
// 4 budget inconsistency, 5 model evaluation failure, 6 fit non-convergence.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "losstan/budget.hpp"
#include "losstan/fitting.hpp"
#include "losstan/io.hpp"
#include "losstan/ringdown.hpp"
#include "losstan/synth.hpp"
#include "losstan/units.hpp"
#include "losstan/vrh.hpp"

namespace fs = std::filesystem;
using namespace losstan;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_nondecaying = 3;
constexpr int exit_budget = 4;
constexpr int exit_model = 5;
constexpr int exit_nonconvergence = 6;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
};

RunConfig load_config_or_default(const CommonOpts& opts) {
    if (opts.config_path.empty()) return RunConfig{};
    return load_run_config(opts.config_path);
}

void emit(const Report& report, const CommonOpts& opts) {
    std::cout << report.str();
    if (!opts.out_path.empty()) report.write(opts.out_path);
}

// Trace files carry their own frequency and gain; the config supplies
// fallbacks for traces that lack them.
RingdownTrace read_trace_with_config(const fs::path& path, const RunConfig& config) {
    RingdownTrace trace = read_trace_csv(path);
    if (trace.frequency <= 0.0) trace.frequency = config.frequency_hz;
    if (!trace.meta.gain_db && config.gain_db != 0.0) trace.meta.gain_db = config.gain_db;
    return trace;
}

// Paper-unit model parameter flags shared by vrh-eval and synth loss-curve.
struct ParamFlags {
    double alpha_inv_um = 1.05;
    double gamma_thz = 11.4;
    double g_f_ev_cm3 = 1.33e13;
    double sigma0_us_m = 0.52;
    double tls_loss = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha-inv-um", alpha_inv_um, "localization length 1/alpha [um]");
        cmd->add_option("--gamma-thz", gamma_thz, "attempt frequency [THz]");
        cmd->add_option("--g-f-ev-cm3", g_f_ev_cm3, "density of states [eV^-1 cm^-3]");
        cmd->add_option("--sigma0-us-m", sigma0_us_m, "residual conductivity [uS/m]");
        cmd->add_option("--tls-loss", tls_loss, "constant dielectric loss tangent");
    }
    VrhParams to_params() const {
        VrhParams p;
        p.alpha = 1e6 / alpha_inv_um;
        p.gamma = gamma_thz * 1e12;
        p.g_f = dos_to_si(g_f_ev_cm3);
        p.sigma0 = sigma0_us_m * 1e-6;
        p.tls_loss = tls_loss;
        return p;
    }
};

std::map<std::string, std::vector<double>> parse_grid(const std::string& spec) {
    std::map<std::string, std::vector<double>> axes;
    std::string rest = spec;
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string item = rest.substr(0, comma);
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidInputError("grid: expected name=axis in '" + item + "'");
        axes[item.substr(0, eq)] = parse_axis(item.substr(eq + 1));
    }
    return axes;
}

// ---------------------------------------------------------------------------
// extract-q
// ---------------------------------------------------------------------------

int cmd_extract_q(const std::string& trace_path, const CommonOpts& opts,
                  std::optional<int> window_points, std::optional<double> target_field,
                  std::optional<long> begin, std::optional<long> end) {
    const RunConfig config = load_config_or_default(opts);
    const RingdownTrace trace = read_trace_with_config(trace_path, config);

    WindowSpec window;
    if (begin && end) {
        window = WindowSpec::indices(*begin, *end);
    } else {
        window = WindowSpec::centered_on_field(target_field.value_or(config.target_field_v_per_m),
                                               window_points.value_or(config.window_points));
    }
    const QEstimate est = extract_q_loaded(trace, window, config.cal);
    const Eigen::Index center = est.window_begin + (est.window_end - est.window_begin) / 2;
    const double watts = dbm_to_watts(trace.powers(center) - trace.meta.gain());
    const double field = field_from_power(watts, config.cal);
    const double photons = photons_from_field(field, config.cal, trace.omega());

    Report report;
    report.section("extract_q");
    report.kv("trace", trace_path);
    report.kv("frequency_hz", trace.frequency);
    report.kv("q_loaded", est.q_loaded);
    report.kv("sigma_q", est.sigma_q);
    report.kv("slope_db_per_s", est.slope);
    report.kv("window_begin", static_cast<long>(est.window_begin));
    report.kv("window_end", static_cast<long>(est.window_end));
    report.kv("center_field_v_per_m", field);
    report.kv("center_photons", photons);
    const double oxide_q = oxide_equivalent_q(config.part);
    report.kv("oxide_equivalent_q", oxide_q);
    report.kv("oxide_negligible",
              oxide_q >= config.oxide_ratio_threshold * est.q_loaded);
    emit(report, opts);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// loss-curve
// ---------------------------------------------------------------------------

std::vector<fs::path> collect_traces(const fs::path& input) {
    std::vector<fs::path> paths;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
    } else if (fs::is_regular_file(input)) {
        std::ifstream in(input);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            std::string item = line.substr(0, hash);
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
                item.pop_back();
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
                item.erase(item.begin());
            if (!item.empty()) paths.push_back(input.parent_path() / item);
        }
    } else {
        throw InvalidInputError("loss-curve: " + input.string() +
                                " is neither a directory nor a manifest file");
    }
    if (paths.empty()) throw InvalidInputError("loss-curve: no trace files found");
    return paths;
}

int cmd_loss_curve(const std::string& input, const CommonOpts& opts,
                   const std::string& points_out, const std::string& parametric_dir,
                   std::optional<int> window_points, std::optional<double> target_field) {
    const RunConfig config = load_config_or_default(opts);
    const auto paths = collect_traces(input);

    std::vector<LossPoint> points;
    std::vector<std::string> status;
    Report report;
    report.section("loss_curve");
    report.kv("traces", static_cast<long>(paths.size()));

    int failures = 0;
    for (const auto& path : paths) {
        const RingdownTrace trace = read_trace_with_config(path, config);
        if (!trace.meta.temperature_k)
            throw InvalidInputError("loss-curve: " + path.string() +
                                    " lacks a '# temperature_k = ...' annotation");
        const double temperature = *trace.meta.temperature_k;
        LossPoint point;
        point.temperature = temperature;
        std::string row_status = "ok";
        try {
            const WindowSpec window = WindowSpec::centered_on_field(
                target_field.value_or(config.target_field_v_per_m),
                window_points.value_or(config.window_points));
            const QEstimate est = extract_q_loaded(trace, window, config.cal);
            const Eigen::Index center = est.window_begin + (est.window_end - est.window_begin) / 2;
            point.field = field_from_power(
                dbm_to_watts(trace.powers(center) - trace.meta.gain()), config.cal);
            const double q0 = q0_at(config.budget, temperature);
            const double q_s_inv = sample_inverse_q(est.q_loaded, q0, config.budget);
            point.loss = silicon_loss(q_s_inv, config.part);
            point.sigma = propagate_loss_error(est.q_loaded, est.sigma_q, q0, config.budget,
                                               config.part);
        } catch (const BudgetInconsistencyError& e) {
            row_status = "budget_inconsistent";
            point.loss = std::nan("");
            point.sigma = std::nan("");
            ++failures;
            std::cerr << path.string() << ": " << e.what() << "\n";
        }
        points.push_back(point);
        status.push_back(row_status);

        if (!parametric_dir.empty() && row_status == "ok") {
            ParametricOptions popts;
            popts.window_width = window_points.value_or(config.window_points);
            popts.stride = config.parametric_stride;
            popts.noise_floor_margin_db = config.noise_floor_margin_db;
            const ParametricCurve curve =
                parametric_loss_vs_field(trace, config.cal, config.budget, config.part, popts);
            fs::create_directories(parametric_dir);
            const fs::path out =
                fs::path(parametric_dir) / (path.stem().string() + "_parametric.csv");
            std::ofstream pf(out);
            pf << "field_v_per_m,loss,sigma\n";
            for (const auto& s : curve.samples)
                pf << format_double(s.field) << "," << format_double(s.loss) << ","
                   << format_double(s.sigma) << "\n";
            report.kv("parametric_" + path.stem().string(), out.string());
        }
    }

    if (!points_out.empty()) write_loss_points_csv(points_out, points, &status);
    report.kv("rows", static_cast<long>(points.size()));
    report.kv("flagged_rows", static_cast<long>(failures));
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < points.size(); ++i)
        rows.push_back(format_double(points[i].temperature) + "," +
                       format_double(points[i].field) + "," + format_double(points[i].loss) + "," +
                       format_double(points[i].sigma) + "," + status[i]);
    report.table("temperature_k,field_v_per_m,loss,sigma,status", rows);
    emit(report, opts);
    return failures == static_cast<int>(points.size()) ? exit_budget : exit_ok;
}

// ---------------------------------------------------------------------------
// vrh-eval
// ---------------------------------------------------------------------------

int cmd_vrh_eval(const CommonOpts& opts, const ParamFlags& flags, const std::string& grid_spec,
                 const std::string& table_out, bool sinh_reference) {
    const RunConfig config = load_config_or_default(opts);
    const VrhParams params = flags.to_params();
    auto axes = parse_grid(grid_spec);
    if (!axes.count("t")) throw InvalidInputError("vrh-eval: grid needs a t axis (temperature, K)");
    const std::vector<double> t_axis = axes["t"];
    const std::vector<double> e_axis =
        axes.count("e") ? axes["e"] : std::vector<double>{config.e_fit_v_per_m};

    const double omega = 2.0 * pi * config.frequency_hz;
    std::vector<std::string> rows;
    for (double e_val : e_axis) {
        for (double t_val : t_axis) {
            Environment env{t_val, e_val, omega, config.eps_r};
            double sigma_h, loss;
            try {
                sigma_h = params.gamma > 0.0 ? hopping_conductivity(env, params) : 0.0;
                loss = loss_tangent_model(env, params);
            } catch (const ModelEvaluationError& e) {
                throw ModelEvaluationError("vrh-eval: failed at T = " + std::to_string(t_val) +
                                           " K, E = " + std::to_string(e_val) + " V/m: " +
                                           e.what());
            }
            rows.push_back(format_double(t_val) + "," + format_double(e_val) + "," +
                           format_double(sigma_h) + "," + format_double(loss));
        }
    }

    Report report;
    report.section("vrh_eval");
    report.kv("alpha_per_m", params.alpha);
    report.kv("gamma_hz", params.gamma);
    report.kv("g_f_per_j_m3", params.g_f);
    report.kv("sigma0_s_per_m", params.sigma0);
    report.kv("rows", static_cast<long>(rows.size()));
    report.table("temperature_k,field_v_per_m,sigma_h_s_per_m,loss", rows);

    // qualitative sinh(e r0 E / k_B T) shape reference for field sweeps
    if (sinh_reference) {
        report.section("sinh_reference");
        std::vector<std::string> reference_rows;
        for (double t_val : t_axis)
            for (double e_val : e_axis) {
                Environment env{t_val, e_val, omega, config.eps_r};
                reference_rows.push_back(format_double(t_val) + "," + format_double(e_val) + "," +
                                         format_double(sinh_low_field_reference(env, params)));
            }
        report.table("temperature_k,field_v_per_m,sinh_reference", reference_rows);
    }
    emit(report, opts);
    if (!table_out.empty()) {
        std::ofstream out(table_out);
        out << "temperature_k,field_v_per_m,sigma_h_s_per_m,loss\n";
        for (const auto& r : rows) out << r << "\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// vrh-fit
// ---------------------------------------------------------------------------

int cmd_vrh_fit(const std::string& points_path, const CommonOpts& opts,
                std::optional<double> e_fit, std::optional<std::uint64_t> seed) {
    const RunConfig config = load_config_or_default(opts);
    const std::vector<LossPoint> points = read_loss_points_csv(points_path);
    if (points.size() < 8)
        throw InvalidInputError("vrh-fit: need at least 8 points for identifiability, got " +
                                std::to_string(points.size()));

    FitConfig fit_config = make_fit_config(config);
    if (e_fit) fit_config.e_fit = *e_fit;
    if (seed) fit_config.seed = *seed;
    const FitResult result = fit_vrh(points, fit_config);

    Report report;
    report.section("vrh_fit");
    report.kv("points", static_cast<long>(points.size()));
    report.kv("e_fit_v_per_m", fit_config.e_fit);
    report.kv("alpha_inv_um", 1e6 / result.params.alpha);
    report.kv("gamma_thz", result.params.gamma / 1e12);
    report.kv("g_f_ev_cm3", dos_from_si(result.params.g_f));
    report.kv("sigma0_us_m", result.params.sigma0 * 1e6);
    report.kv("chi2", result.chi2);
    const long dof = static_cast<long>(points.size()) - 4;
    report.kv("chi2_per_dof", dof > 0 ? result.chi2 / double(dof) : std::nan(""));
    report.kv("converged", result.converged);
    report.kv("identifiability_warning", result.identifiability_warning);
    report.kv("objective_evaluations", result.objective_evaluations);
    report.kv("best_restart", static_cast<long>(result.best_restart));

    report.section("covariance_log10");
    const char* names[4] = {"alpha", "gamma", "g_f", "sigma0"};
    for (int i = 0; i < 4; ++i) {
        std::string row;
        for (int j = 0; j < 4; ++j)
            row += (j ? "," : "") + format_double(result.covariance(i, j));
        report.kv(names[i], row);
    }

    report.section("model_curve");
    std::vector<std::string> rows;
    double t_min = points.front().temperature, t_max = t_min;
    for (const auto& p : points) {
        t_min = std::min(t_min, p.temperature);
        t_max = std::max(t_max, p.temperature);
    }
    const std::vector<double> curve_grid =
        t_min < t_max ? parse_axis(format_double(t_min) + ":" + format_double(t_max) + ":100:log")
                      : std::vector<double>{t_min};
    for (double t : curve_grid) {
        Environment env{t, fit_config.e_fit, fit_config.omega, fit_config.eps_r};
        rows.push_back(format_double(t) + "," + format_double(loss_tangent_model(env, result.params)));
    }
    report.table("temperature_k,loss", rows);
    emit(report, opts);
    return result.converged ? exit_ok : exit_nonconvergence;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

int cmd_synth_ringdown(const CommonOpts& opts, double q_l, SynthSpec spec,
                       std::optional<double> temperature_k, const std::string& out_file) {
    RingdownTrace trace = synth_ringdown(q_l, spec);
    if (temperature_k) trace.meta.temperature_k = temperature_k;
    write_trace_csv(out_file, trace);
    Report report;
    report.section("synth_ringdown");
    report.kv("q_loaded", q_l);
    report.kv("samples", static_cast<long>(trace.times.size()));
    report.kv("out", out_file);
    emit(report, opts);
    return exit_ok;
}

int cmd_synth_ringdown_field(const CommonOpts& opts, SynthSpec spec, double temperature_k,
                             double law_const, double law_slope, double law_power,
                             double law_ref_field, const std::string& out_file) {
    const RunConfig config = load_config_or_default(opts);
    auto law = [=](double e_field) {
        return law_const + law_slope * std::pow(e_field / law_ref_field, law_power);
    };
    const RingdownTrace trace = synth_ringdown_field_dependent(law, config.budget, config.part,
                                                               config.cal, spec, temperature_k);
    write_trace_csv(out_file, trace);
    Report report;
    report.section("synth_ringdown_field");
    report.kv("samples", static_cast<long>(trace.times.size()));
    report.kv("out", out_file);
    emit(report, opts);
    return exit_ok;
}

int cmd_synth_loss_curve(const CommonOpts& opts, const ParamFlags& flags,
                         const std::string& t_axis, double e_field, double noise_rel,
                         std::uint64_t seed, const std::string& out_file) {
    const RunConfig config = load_config_or_default(opts);
    const VrhParams params = flags.to_params();
    Environment env{0.1, e_field, 2.0 * pi * config.frequency_hz, config.eps_r};
    const auto points = synth_loss_curve(params, env, parse_axis(t_axis), noise_rel, seed);
    write_loss_points_csv(out_file, points);
    Report report;
    report.section("synth_loss_curve");
    report.kv("points", static_cast<long>(points.size()));
    report.kv("out", out_file);
    emit(report, opts);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ring-down loss-tangent analysis: Q extraction, loss budget, VRH model"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--config", common.config_path, "analysis config file (key = value)")
        ->expected(1);
    app.add_option("--out", common.out_path, "write the structured report to this file");

    // extract-q
    auto* sc_extract = app.add_subcommand("extract-q", "loaded Q from a ring-down trace");
    sc_extract->fallthrough();
    std::string trace_path;
    std::optional<int> window_points;
    std::optional<double> target_field;
    std::optional<long> win_begin, win_end;
    sc_extract->add_option("trace", trace_path, "trace file (time_s,power_dbm)")->required();
    sc_extract->add_option("--window", window_points, "regression window width [points]");
    sc_extract->add_option("--target-field", target_field, "window center field [V/m]");
    sc_extract->add_option("--begin", win_begin, "explicit window begin index");
    sc_extract->add_option("--end", win_end, "explicit window end index (exclusive)");

    // loss-curve
    auto* sc_loss = app.add_subcommand("loss-curve", "per-trace silicon loss tangent table");
    sc_loss->fallthrough();
    std::string loss_input, points_out, parametric_dir;
    sc_loss->add_option("input", loss_input, "trace directory or manifest file")->required();
    sc_loss->add_option("--points-out", points_out, "write the loss table to this CSV");
    sc_loss->add_option("--parametric-dir", parametric_dir,
                        "also write per-trace loss-vs-field tables here");
    sc_loss->add_option("--window", window_points, "regression window width [points]");
    sc_loss->add_option("--target-field", target_field, "window center field [V/m]");

    // vrh-eval
    auto* sc_eval = app.add_subcommand("vrh-eval", "evaluate the VRH model on a (T, E) grid");
    sc_eval->fallthrough();
    ParamFlags eval_flags;
    eval_flags.attach(sc_eval);
    std::string grid_spec = "t=0.05:1:100:log";
    std::string table_out;
    bool sinh_reference = false;
    sc_eval->add_option("--grid", grid_spec, "grid, e.g. t=0.05:1:200:log,e=5");
    sc_eval->add_option("--table-out", table_out, "write the bare CSV table here");
    sc_eval->add_flag("--sinh-ref", sinh_reference,
                      "append the qualitative low-field sinh shape reference");

    // vrh-fit
    auto* sc_fit = app.add_subcommand("vrh-fit", "fit VRH parameters to a loss table");
    sc_fit->fallthrough();
    std::string points_path;
    std::optional<double> e_fit;
    std::optional<std::uint64_t> fit_seed;
    sc_fit->add_option("points", points_path, "loss table CSV")->required();
    sc_fit->add_option("--e-fit", e_fit, "field at which the model is evaluated [V/m]");
    sc_fit->add_option("--seed", fit_seed, "restart perturbation seed");

    // synth
    auto* sc_synth = app.add_subcommand("synth", "generate synthetic data");
    sc_synth->fallthrough();
    sc_synth->require_subcommand(1);

    SynthSpec spec;
    std::uint64_t seed_value = 0;
    double q_l = 1e9;
    std::optional<double> synth_temperature;
    std::string synth_out;

    auto add_spec_options = [&](CLI::App* cmd) {
        cmd->add_option("--f", spec.frequency, "resonance frequency [Hz]");
        cmd->add_option("--p0-dbm", spec.p0_dbm, "initial transmitted power [dBm]");
        cmd->add_option("--duration", spec.duration, "trace duration [s]");
        cmd->add_option("--rate", spec.sample_rate, "sample rate [Hz]");
        cmd->add_option("--noise-db", spec.noise_db, "Gaussian noise std dev [dB]");
        cmd->add_option("--seed", seed_value, "RNG seed (required)")->required();
        cmd->add_option("--out-file", synth_out, "output file")->required();
    };

    auto* sc_sr = sc_synth->add_subcommand("ringdown", "constant-Q exponential decay");
    sc_sr->fallthrough();
    sc_sr->add_option("--q", q_l, "loaded Q")->required();
    sc_sr->add_option("--temperature-k", synth_temperature, "temperature annotation [K]");
    add_spec_options(sc_sr);

    auto* sc_srf = sc_synth->add_subcommand("ringdown-field",
                                            "decay with field-dependent silicon loss");
    sc_srf->fallthrough();
    double law_const = 2e-6, law_slope = 0.0, law_power = 1.0, law_ref_field = 10.0;
    double srf_temperature = 0.1;
    sc_srf->add_option("--law-const", law_const, "loss law constant term");
    sc_srf->add_option("--law-slope", law_slope, "loss law field coefficient");
    sc_srf->add_option("--law-power", law_power, "loss law field exponent");
    sc_srf->add_option("--law-ref-field", law_ref_field, "loss law reference field [V/m]");
    sc_srf->add_option("--temperature-k", srf_temperature, "temperature annotation [K]");
    add_spec_options(sc_srf);

    auto* sc_slc = sc_synth->add_subcommand("loss-curve", "loss-vs-temperature points");
    sc_slc->fallthrough();
    ParamFlags slc_flags;
    slc_flags.attach(sc_slc);
    std::string t_axis = "0.07:1:30:log";
    double slc_field = 5.0, noise_rel = 0.0;
    sc_slc->add_option("--t-grid", t_axis, "temperature axis, lo:hi:count[:log]");
    sc_slc->add_option("--e", slc_field, "evaluation field [V/m]");
    sc_slc->add_option("--noise-rel", noise_rel, "relative multiplicative noise");
    sc_slc->add_option("--seed", seed_value, "RNG seed (required)")->required();
    sc_slc->add_option("--out-file", synth_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (sc_extract->parsed())
            return cmd_extract_q(trace_path, common, window_points, target_field, win_begin,
                                 win_end);
        if (sc_loss->parsed())
            return cmd_loss_curve(loss_input, common, points_out, parametric_dir, window_points,
                                  target_field);
        if (sc_eval->parsed())
            return cmd_vrh_eval(common, eval_flags, grid_spec, table_out, sinh_reference);
        if (sc_fit->parsed()) return cmd_vrh_fit(points_path, common, e_fit, fit_seed);
        if (sc_synth->parsed()) {
            spec.seed = seed_value;
            if (sc_sr->parsed())
                return cmd_synth_ringdown(common, q_l, spec, synth_temperature, synth_out);
            if (sc_srf->parsed())
                return cmd_synth_ringdown_field(common, spec, srf_temperature, law_const,
                                                law_slope, law_power, law_ref_field, synth_out);
            if (sc_slc->parsed())
                return cmd_synth_loss_curve(common, slc_flags, t_axis, slc_field, noise_rel,
                                            seed_value, synth_out);
        }
        std::cerr << "no subcommand selected\n";
        return exit_input;
    } catch (const NonDecayingTraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_nondecaying;
    } catch (const BudgetInconsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const ModelEvaluationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_model;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
