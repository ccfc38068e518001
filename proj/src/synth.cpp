#include "losstan/synth.hpp"

#include <cmath>
#include <random>
#include <string>

#include "losstan/units.hpp"

namespace losstan {

namespace {

constexpr double steps_per_decay_time = 1e4;
constexpr double max_substeps_per_interval = 1e7;

void check_spec(const SynthSpec& spec) {
    if (!(spec.duration > 0.0)) throw InvalidInputError("synth: duration must be positive");
    if (!(spec.sample_rate > 0.0)) throw InvalidInputError("synth: sample_rate must be positive");
    if (!(spec.noise_db >= 0.0)) throw InvalidInputError("synth: noise_db must be non-negative");
    if (!(spec.frequency > 0.0)) throw InvalidInputError("synth: frequency must be positive");
    if (!spec.seed)
        throw InvalidInputError("synth: a seed is required; unseeded generation is rejected");
}

Eigen::VectorXd sample_times(const SynthSpec& spec) {
    const auto n = static_cast<Eigen::Index>(std::llround(spec.duration * spec.sample_rate)) + 1;
    if (n < 3) throw InvalidInputError("synth: duration and sample_rate give fewer than 3 samples");
    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) t(i) = double(i) / spec.sample_rate;
    return t;
}

void add_noise(Eigen::VectorXd& powers, const SynthSpec& spec) {
    if (spec.noise_db == 0.0) return;
    std::mt19937_64 rng(*spec.seed);
    std::normal_distribution<double> gauss(0.0, spec.noise_db);
    for (Eigen::Index i = 0; i < powers.size(); ++i) powers(i) += gauss(rng);
}

} // namespace

RingdownTrace synth_ringdown(double q_l, const SynthSpec& spec) {
    if (!(q_l > 0.0)) throw InvalidInputError("synth_ringdown: Q_L must be positive");
    check_spec(spec);

    RingdownTrace trace;
    trace.frequency = spec.frequency;
    trace.times = sample_times(spec);
    const double omega = trace.omega();
    const double slope = -10.0 * omega / (std::log(10.0) * q_l);  // dB/s
    trace.powers = spec.p0_dbm + slope * trace.times.array();
    add_noise(trace.powers, spec);
    trace.meta.input_power_dbm = spec.p0_dbm;
    return trace;
}

RingdownTrace synth_ringdown_field_dependent(const std::function<double(double)>& loss_law,
                                             const QBudget& budget, const Participation& part,
                                             const CouplingCalibration& cal,
                                             const SynthSpec& spec, double temperature_k) {
    check_spec(spec);
    const double q0 = q0_at(budget, temperature_k);
    const double parasitic_inv = part.p_sio2 * part.q_sio2_inv + 1.0 / q0 + 1.0 / budget.q1 +
                                 1.0 / budget.q2;

    RingdownTrace trace;
    trace.frequency = spec.frequency;
    trace.times = sample_times(spec);
    const double omega = trace.omega();

    auto loaded_inverse_q = [&](double energy) {
        const double field = cal.kappa * std::sqrt(omega * energy);
        const double inv = part.p_si * loss_law(field) + parasitic_inv;
        if (!std::isfinite(inv) || !(inv > 0.0))
            throw IntegrationError("synth_ringdown_field_dependent: 1/Q_L = " +
                                   std::to_string(inv) + " at E = " + std::to_string(field) +
                                   " V/m");
        return inv;
    };
    auto rate = [&](double energy) { return -omega * energy * loaded_inverse_q(energy); };

    double energy = dbm_to_watts(spec.p0_dbm) * budget.q2 / omega;
    Eigen::VectorXd powers(trace.times.size());
    powers(0) = watts_to_dbm(omega * energy / budget.q2);
    for (Eigen::Index i = 1; i < trace.times.size(); ++i) {
        const double dt = trace.times(i) - trace.times(i - 1);
        const double decay_time = 1.0 / (omega * loaded_inverse_q(energy));
        const double substeps = std::ceil(dt * steps_per_decay_time / decay_time);
        if (!(substeps >= 1.0) || substeps > max_substeps_per_interval)
            throw IntegrationError("synth_ringdown_field_dependent: step-size sanity violation (" +
                                   std::to_string(substeps) + " sub-steps per interval)");
        const auto n_sub = static_cast<long>(substeps);
        const double h = dt / double(n_sub);
        for (long k = 0; k < n_sub; ++k) {
            const double k1 = rate(energy);
            const double k2 = rate(energy + 0.5 * h * k1);
            const double k3 = rate(energy + 0.5 * h * k2);
            const double k4 = rate(energy + h * k3);
            energy += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!(energy > 0.0))
                throw IntegrationError("synth_ringdown_field_dependent: stored energy became "
                                       "non-positive");
        }
        powers(i) = watts_to_dbm(omega * energy / budget.q2);
    }
    trace.powers = std::move(powers);
    add_noise(trace.powers, spec);
    trace.meta.temperature_k = temperature_k;
    trace.meta.input_power_dbm = spec.p0_dbm;
    return trace;
}

std::vector<LossPoint> synth_loss_curve(const VrhParams& params, const Environment& env_template,
                                        const std::vector<double>& t_grid, double noise_rel,
                                        std::uint64_t seed, double sigma_floor) {
    if (t_grid.empty()) throw InvalidInputError("synth_loss_curve: temperature grid is empty");
    if (!(noise_rel >= 0.0)) throw InvalidInputError("synth_loss_curve: noise_rel must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<LossPoint> points;
    points.reserve(t_grid.size());
    for (double t : t_grid) {
        Environment env = env_template;
        env.temperature = t;
        const double model = loss_tangent_model(env, params);
        LossPoint p;
        p.temperature = t;
        p.field = env.field;
        p.loss = noise_rel > 0.0 ? model * (1.0 + noise_rel * gauss(rng)) : model;
        p.sigma = noise_rel > 0.0 ? model * noise_rel : sigma_floor;
        points.push_back(p);
    }
    return points;
}

} // namespace losstan
