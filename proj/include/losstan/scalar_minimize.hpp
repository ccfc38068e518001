#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "losstan/errors.hpp"

namespace losstan {

template <typename T>
struct ScalarMinimum {
    T x;
    T value;
};

// Golden-section refinement on a bracket [a, b]. The objective need not be
// differentiable inside the bracket (a kink is fine); unimodality on [a, b]
// is assumed.
template <typename Fn, typename T = double>
ScalarMinimum<T> golden_section_minimize(Fn&& fn, T a, T b, T rel_tol) {
    constexpr T inv_phi = T(0.6180339887498949);
    if (b < a) std::swap(a, b);
    T c = b - inv_phi * (b - a);
    T d = a + inv_phi * (b - a);
    T fc = fn(c);
    T fd = fn(d);
    while (b - a > rel_tol * (std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    T x = (a + b) / 2;
    return {x, fn(x)};
}

// Global 1-D minimization over [lo, hi]: log-spaced bracketing scan followed
// by golden-section refinement around the best probe. Extra candidate
// abscissae (e.g. a known kink location) can be supplied; they are probed and
// also compared against the refined result. Throws OptimizationError when
// the scan minimum sits on the domain edge, i.e. no interior bracket exists.
template <typename Fn>
ScalarMinimum<double> minimize_log_bracketed(Fn&& fn, double lo, double hi,
                                             int probes, double rel_tol,
                                             const std::vector<double>& extra = {}) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(probes) + extra.size());
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (probes - 1);
    for (int i = 0; i < probes; ++i) xs.push_back(std::exp(log_lo + i * step));
    for (double x : extra)
        if (x > lo && x < hi) xs.push_back(x);
    std::sort(xs.begin(), xs.end());

    std::size_t best = 0;
    double best_f = fn(xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double f = fn(xs[i]);
        if (f < best_f) {
            best_f = f;
            best = i;
        }
    }
    if (best == 0 || best + 1 == xs.size())
        throw OptimizationError("minimize_log_bracketed: minimum at domain edge x=" +
                                std::to_string(xs[best]) + ", f=" + std::to_string(best_f) +
                                "; no interior bracket");

    auto result = golden_section_minimize(fn, xs[best - 1], xs[best + 1], rel_tol);
    // The scan already evaluated candidate kinks; keep whichever is lower.
    for (double x : extra) {
        if (x <= lo || x >= hi) continue;
        double f = fn(x);
        if (f < result.value) result = {x, f};
    }
    if (best_f < result.value) result = {xs[best], best_f};
    return result;
}

} // namespace losstan
