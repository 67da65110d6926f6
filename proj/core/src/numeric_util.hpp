#pragma once

#include <cmath>
#include <limits>

namespace gbfam::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// a * log(y) with the convention 0 * log(0) = 0.
inline double xlogy(double a, double y) {
    if (a == 0.0) return 0.0;
    return a * std::log(y);
}

/// a * log1p(y) with 0 * log1p(-1) = 0.
inline double xlog1py(double a, double y) {
    if (a == 0.0) return 0.0;
    return a * std::log1p(y);
}

/// log(1 + e^z) without overflow.
inline double softplus(double z) {
    if (z > 35.0) return z + std::exp(-z);
    if (z < -35.0) return std::exp(z);
    return std::log1p(std::exp(z));
}

/// Inverse of softplus for s > 0.
inline double softplus_inv(double s) {
    if (s > 35.0) return s + std::log(-std::expm1(-s));
    return std::log(std::expm1(s));
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::floor(x) == x;
}

}  // namespace gbfam::detail
