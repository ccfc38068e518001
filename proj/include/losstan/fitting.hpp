#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "losstan/budget.hpp"
#include "losstan/vrh.hpp"

namespace losstan {

// Configuration for the weighted nonlinear least-squares VRH fit. Bounds are
// in natural units; the optimizer works in (log10 alpha, log10 gamma,
// log10 g_f, log10 sigma0).
struct FitConfig {
    VrhParams initial{952380.952380952, 11.4e12, 8.301207911e37, 0.52e-6, 0.0};
    VrhParams lower{1e4, 1e11, 6.241509074e34, 1e-12, 0.0};
    VrhParams upper{1e9, 1e14, 6.241509074e49, 1e-3, 0.0};
    double e_fit = 5.0;      // V/m
    double omega = 2.0 * pi * 2.6e9;
    double eps_r = 11.5;
    double tls_loss = 0.0;
    int max_iterations = 2000;
    double tolerance = 1e-10;  // relative objective spread for convergence
    int restarts = 8;
    std::uint64_t seed = 1;    // restart perturbations
};

struct FitResult {
    VrhParams params;
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();  // log10-parameter space
    Eigen::VectorXd residuals;
    double chi2 = 0.0;
    bool converged = false;
    long objective_evaluations = 0;
    bool identifiability_warning = false;
    int best_restart = 0;
};

// Weighted residuals (model - loss_i)/sigma_i at the given parameters.
// Points with sigma = 0 receive unit weight and set the flag when provided.
Eigen::VectorXd fit_residuals(const VrhParams& params, const std::vector<LossPoint>& points,
                              double e_fit, double omega, double eps_r,
                              bool* unit_weight_flag = nullptr);

// Derivative-free simplex minimization of chi2 with perturbed restarts.
FitResult fit_vrh(const std::vector<LossPoint>& points, const FitConfig& config);

// Chi2 profile of one parameter (0 alpha, 1 gamma, 2 g_f, 3 sigma0): the
// other three are re-optimized at each fixed grid value (natural units).
std::vector<std::pair<double, double>> profile_parameter(const std::vector<LossPoint>& points,
                                                         const FitConfig& config, int which,
                                                         const std::vector<double>& grid);

} // namespace losstan
