#include "losstan/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace losstan {

namespace {

using Vec4 = Eigen::Vector4d;

Vec4 to_log(const VrhParams& p) {
    return {std::log10(p.alpha), std::log10(p.gamma), std::log10(p.g_f), std::log10(p.sigma0)};
}

VrhParams from_log(const Vec4& x, const FitConfig& config) {
    VrhParams p;
    p.alpha = std::pow(10.0, x(0));
    p.gamma = std::pow(10.0, x(1));
    p.g_f = std::pow(10.0, x(2));
    p.sigma0 = std::pow(10.0, x(3));
    p.tls_loss = config.tls_loss;
    return p;
}

struct Objective {
    const std::vector<LossPoint>& points;
    const FitConfig& config;
    Vec4 lo, hi;
    long evaluations = 0;

    double operator()(const Vec4& x) {
        ++evaluations;
        Vec4 clipped = x.cwiseMax(lo).cwiseMin(hi);
        const double violation = (x - clipped).squaredNorm();
        double chi2;
        try {
            const Eigen::VectorXd res = fit_residuals(from_log(clipped, config), points,
                                                      config.e_fit, config.omega, config.eps_r);
            chi2 = res.squaredNorm();
        } catch (const Error&) {
            return 1e300;
        }
        return chi2 + 1e6 * violation * (1.0 + chi2);
    }
};

struct SimplexResult {
    Vec4 x;
    double f = 0.0;
    bool converged = false;
};

// Standard Nelder-Mead (reflect 1, expand 2, contract 1/2, shrink 1/2) on a
// 4-simplex. Terminates when the objective spread collapses relative to the
// best vertex or the iteration budget runs out.
SimplexResult nelder_mead(Objective& objective, const Vec4& start, double step,
                          int max_iterations, double tolerance) {
    constexpr int n = 4;
    std::array<Vec4, n + 1> xs;
    std::array<double, n + 1> fs;
    xs[0] = start;
    fs[0] = objective(start);
    for (int i = 0; i < n; ++i) {
        xs[i + 1] = start;
        xs[i + 1](i) += step;
        fs[i + 1] = objective(xs[i + 1]);
    }

    auto order = [&] {
        std::array<int, n + 1> idx{};
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::array<Vec4, n + 1> xs2;
        std::array<double, n + 1> fs2;
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs = xs2;
        fs = fs2;
    };

    SimplexResult result;
    for (int iter = 0; iter < max_iterations; ++iter) {
        order();
        // absolute floor keeps exactly-zero objectives terminable
        if (fs[n] - fs[0] <= tolerance * std::abs(fs[0]) + 1e-14) {
            result.converged = true;
            break;
        }
        // a simplex collapsed to a point cannot improve further
        double diameter = 0.0;
        for (int i = 1; i <= n; ++i)
            diameter = std::max(diameter, (xs[i] - xs[0]).cwiseAbs().maxCoeff());
        if (diameter <= 1e-9) {
            result.converged = true;
            break;
        }
        Vec4 centroid = Vec4::Zero();
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= double(n);

        const Vec4 reflected = centroid + (centroid - xs[n]);
        const double f_r = objective(reflected);
        if (f_r < fs[0]) {
            const Vec4 expanded = centroid + 2.0 * (centroid - xs[n]);
            const double f_e = objective(expanded);
            if (f_e < f_r) {
                xs[n] = expanded;
                fs[n] = f_e;
            } else {
                xs[n] = reflected;
                fs[n] = f_r;
            }
            continue;
        }
        if (f_r < fs[n - 1]) {
            xs[n] = reflected;
            fs[n] = f_r;
            continue;
        }
        const Vec4 contracted = centroid + 0.5 * (xs[n] - centroid);
        const double f_c = objective(contracted);
        if (f_c < fs[n]) {
            xs[n] = contracted;
            fs[n] = f_c;
            continue;
        }
        for (int i = 1; i <= n; ++i) {
            xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
            fs[i] = objective(xs[i]);
        }
    }
    order();
    result.x = xs[0];
    result.f = fs[0];
    return result;
}

// Linearized covariance from the finite-difference Jacobian of the weighted
// residuals at the optimum, regularized so degenerate directions surface as
// huge variances rather than aborting.
Eigen::Matrix4d covariance_at(const Vec4& x, const std::vector<LossPoint>& points,
                              const FitConfig& config) {
    constexpr double step = 1e-4;  // log10 units
    const Eigen::Index m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd jac(m, 4);
    for (int j = 0; j < 4; ++j) {
        Vec4 plus = x, minus = x;
        plus(j) += step;
        minus(j) -= step;
        Eigen::VectorXd r_plus, r_minus;
        try {
            r_plus = fit_residuals(from_log(plus, config), points, config.e_fit, config.omega,
                                   config.eps_r);
            r_minus = fit_residuals(from_log(minus, config), points, config.e_fit, config.omega,
                                    config.eps_r);
        } catch (const Error&) {
            jac.col(j).setZero();
            continue;
        }
        jac.col(j) = (r_plus - r_minus) / (2.0 * step);
    }
    Eigen::Matrix4d jtj = jac.transpose() * jac;
    const double reg = 1e-12 * std::max(1.0, jtj.trace() / 4.0) + 1e-300;
    jtj += reg * Eigen::Matrix4d::Identity();
    Eigen::Matrix4d cov = jtj.ldlt().solve(Eigen::Matrix4d::Identity());
    cov = 0.5 * (cov + cov.transpose()).eval();
    // Clamp any numerically negative eigenvalue so variances stay valid.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eigen(cov);
    Eigen::Vector4d vals = eigen.eigenvalues().cwiseMax(0.0);
    return eigen.eigenvectors() * vals.asDiagonal() * eigen.eigenvectors().transpose();
}

} // namespace

Eigen::VectorXd fit_residuals(const VrhParams& params, const std::vector<LossPoint>& points,
                              double e_fit, double omega, double eps_r,
                              bool* unit_weight_flag) {
    if (points.empty()) throw InvalidInputError("fit_residuals: no points");
    Eigen::VectorXd res(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const LossPoint& p = points[i];
        if (!(p.temperature > 0.0) || !(p.loss > 0.0) || !(p.sigma >= 0.0))
            throw InvalidInputError("fit_residuals: invalid point " + std::to_string(i));
        Environment env{p.temperature, e_fit, omega, eps_r};
        double model;
        try {
            model = loss_tangent_model(env, params);
        } catch (const Error& e) {
            throw ModelEvaluationError("fit_residuals: model evaluation failed at point " +
                                       std::to_string(i) + " (T = " +
                                       std::to_string(p.temperature) + " K): " + e.what());
        }
        double sigma = p.sigma;
        if (sigma == 0.0) {
            sigma = 1.0;
            if (unit_weight_flag) *unit_weight_flag = true;
        }
        res(static_cast<Eigen::Index>(i)) = (model - p.loss) / sigma;
    }
    return res;
}

FitResult fit_vrh(const std::vector<LossPoint>& points, const FitConfig& config) {
    if (points.empty()) throw InvalidInputError("fit_vrh: no points");

    Objective objective{points, config,
                        to_log(config.lower).cwiseMin(to_log(config.upper)),
                        to_log(config.lower).cwiseMax(to_log(config.upper)), 0};
    const Vec4 x0 = to_log(config.initial).cwiseMax(objective.lo).cwiseMin(objective.hi);

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> offset(-0.5, 0.5);

    SimplexResult best;
    best.f = std::numeric_limits<double>::infinity();
    int best_restart = 0;
    const int runs = std::max(1, config.restarts);
    for (int k = 0; k < runs; ++k) {
        Vec4 start = x0;
        if (k > 0)
            for (int i = 0; i < 4; ++i)
                start(i) = std::clamp(x0(i) + offset(rng), objective.lo(i), objective.hi(i));
        SimplexResult run = nelder_mead(objective, start, 0.25, config.max_iterations,
                                        config.tolerance);
        if (run.f < best.f) {
            best = run;
            best_restart = k;
        }
    }
    // Polish from the overall best vertex with a tighter simplex.
    SimplexResult polished = nelder_mead(objective, best.x, 0.02, config.max_iterations,
                                         config.tolerance);
    if (polished.f <= best.f) {
        polished.converged = polished.converged || best.converged;
        best = polished;
    }

    const Vec4 x_best = best.x.cwiseMax(objective.lo).cwiseMin(objective.hi);
    FitResult result;
    result.params = from_log(x_best, config);
    result.converged = best.converged;
    result.objective_evaluations = objective.evaluations;
    result.best_restart = best_restart;
    bool unit_weights = false;
    result.residuals = fit_residuals(result.params, points, config.e_fit, config.omega,
                                     config.eps_r, &unit_weights);
    result.chi2 = result.residuals.squaredNorm();
    result.covariance = covariance_at(x_best, points, config);

    std::set<double> unique_t;
    for (const auto& p : points) unique_t.insert(p.temperature);
    std::vector<const LossPoint*> sorted;
    for (const auto& p : points) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const LossPoint* a, const LossPoint* b) { return a->temperature < b->temperature; });
    std::size_t arg_min = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->loss < sorted[arg_min]->loss) arg_min = i;
    result.identifiability_warning = points.size() < 8 || unique_t.size() < 5 ||
                                     arg_min == 0 || arg_min + 1 == sorted.size();
    if (unique_t.size() < 2) result.converged = false;
    return result;
}

std::vector<std::pair<double, double>> profile_parameter(const std::vector<LossPoint>& points,
                                                         const FitConfig& config, int which,
                                                         const std::vector<double>& grid) {
    if (which < 0 || which > 3)
        throw InvalidInputError("profile_parameter: parameter index must be in [0, 3]");
    std::vector<std::pair<double, double>> profile;
    profile.reserve(grid.size());
    for (double value : grid) {
        if (!(value > 0.0))
            throw InvalidInputError("profile_parameter: grid values must be positive");
        FitConfig fixed = config;
        auto pin = [&](VrhParams& p) {
            switch (which) {
                case 0: p.alpha = value; break;
                case 1: p.gamma = value; break;
                case 2: p.g_f = value; break;
                default: p.sigma0 = value; break;
            }
        };
        pin(fixed.initial);
        pin(fixed.lower);
        pin(fixed.upper);
        const FitResult r = fit_vrh(points, fixed);
        profile.emplace_back(value, r.chi2);
    }
    return profile;
}

} // namespace losstan
