#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "losstan/budget.hpp"
#include "losstan/ringdown.hpp"
#include "losstan/vrh.hpp"

namespace losstan {

// Generation recipe for a synthetic ring-down trace. Seeding is mandatory;
// unseeded generation is rejected so every stochastic path is reproducible.
struct SynthSpec {
    double frequency = 2.6e9;    // Hz
    double p0_dbm = -20.0;       // initial transmitted power
    double duration = 0.1;       // s
    double sample_rate = 2e4;    // Hz
    double noise_db = 0.0;       // Gaussian noise std dev on power [dB]
    std::optional<std::uint64_t> seed;
};

// Exact linear decay in dBm: p(t) = p0 - (10 omega / (ln10 Q_L)) t + noise.
RingdownTrace synth_ringdown(double q_l, const SynthSpec& spec);

// Ring-down with a field-dependent silicon loss: integrates the stored-energy
// balance dU/dt = -omega U / Q_L(E(U)) with classical fixed-step RK4
// (sub-step <= local decay time / 1e4), where
//   1/Q_L(E) = p_si loss_law(E) + p_sio2/Q_SiO2 + 1/Q0 + 1/Q1 + 1/Q2,
//   E = kappa sqrt(omega U),  P_t = omega U / Q2.
// temperature_k selects Q0 from a tabulated budget and is stamped into the
// trace metadata.
RingdownTrace synth_ringdown_field_dependent(const std::function<double(double)>& loss_law,
                                             const QBudget& budget, const Participation& part,
                                             const CouplingCalibration& cal,
                                             const SynthSpec& spec, double temperature_k);

// Loss-vs-temperature points from the VRH model with multiplicative noise:
// loss_i = model(T_i) (1 + noise_rel z_i), sigma_i = model(T_i) noise_rel
// (or sigma_floor when noise_rel is zero).
std::vector<LossPoint> synth_loss_curve(const VrhParams& params, const Environment& env_template,
                                        const std::vector<double>& t_grid, double noise_rel,
                                        std::uint64_t seed, double sigma_floor = 0.0);

} // namespace losstan
