#pragma once

#include <cmath>
#include <numbers>

namespace gbfam::detail {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int level = 0;
    bool converged = false;
};

/// Tanh-sinh (double exponential) quadrature on [0, 1].
///
/// The integrand is called as f(t, 1 - t) with both arguments computed
/// directly from the transformation, so integrands with algebraic endpoint
/// singularities keep full precision near t = 1.
template <class F>
QuadResult tanh_sinh_unit(F&& f, double rel_tol, int max_level = 10) {
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    constexpr double kSMax = 6.0;

    // Contribution of the node pair at +s and -s.
    auto pair = [&](double s) {
        const double e = std::exp(-2.0 * kHalfPi * std::sinh(s));
        const double small = e / (1.0 + e);  // node distance to the nearer endpoint
        const double large = 1.0 / (1.0 + e);
        const double w = 2.0 * kHalfPi * std::cosh(s) * small * large;
        double acc = 0.0;
        if (small > 0.0) {
            acc += w * f(large, small);  // node near t = 1
            acc += w * f(small, large);  // node near t = 0
        }
        return acc;
    };

    double h = 1.0;
    double sum = 2.0 * kHalfPi * 0.25 * f(0.5, 0.5);
    for (double s = h; s <= kSMax; s += h) sum += pair(s);
    double estimate = h * sum;

    QuadResult result;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double s = h; s <= kSMax; s += 2.0 * h) sum += pair(s);
        const double next = h * sum;
        const double delta = std::abs(next - estimate);
        estimate = next;
        result.value = estimate;
        result.error_estimate = delta;
        result.level = level;
        if (level >= 3 && delta <= rel_tol * std::abs(estimate)) {
            result.converged = true;
            return result;
        }
        if (level >= 3 && estimate == 0.0 && delta == 0.0) {
            result.converged = true;
            return result;
        }
    }
    return result;
}

}  // namespace gbfam::detail
