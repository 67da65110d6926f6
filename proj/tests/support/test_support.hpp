#pragma once

// Helpers shared by the unit and acceptance tests: random valid parameter
// sets per family and Boost quadrature of densities.

#include <algorithm>
#include <array>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "gbfam/dist_spec.hpp"
#include "gbfam/distributions.hpp"

namespace testsupport {

using gbfam::DistSpec;
using gbfam::Family;

inline constexpr std::array<Family, 12> kAllFamilies{
    Family::GB,  Family::mGB, Family::tildeMGB, Family::mB,   Family::B,   Family::B2,
    Family::mB2, Family::GB1, Family::GB2,      Family::mGB2, Family::GGa, Family::GIGa};

// q stays above 0.7 so the mass within one ulp of beta1 is below 1e-11,
// the resolution limit of any quadrature in x.
inline DistSpec random_spec(Family f, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(0.5, 3.0);
    std::uniform_real_distribution<double> lb(0.0, 2.5);
    std::uniform_real_distribution<double> lr(-2.0, 0.5);
    std::uniform_real_distribution<double> up(0.3, 4.0);
    std::uniform_real_distribution<double> uq(0.7, 4.0);
    const double alpha = ua(rng);
    const double beta1 = std::pow(10.0, lb(rng));
    const double beta2 = beta1 * std::pow(10.0, lr(rng));
    const double p = up(rng);
    const double q = uq(rng);
    gbfam::SpecFields fl{alpha, beta1, beta2, p, q};
    switch (f) {
        case Family::B:
        case Family::mB: fl.alpha.reset(); break;
        case Family::B2:
        case Family::mB2:
            fl.alpha.reset();
            fl.beta1.reset();
            break;
        case Family::GB1: fl.beta2.reset(); break;
        case Family::GB2:
        case Family::mGB2: fl.beta1.reset(); break;
        case Family::GGa:
            fl.beta1.reset();
            fl.q.reset();
            break;
        case Family::GIGa:
            fl.beta1.reset();
            fl.p.reset();
            break;
        default: break;
    }
    return DistSpec::from_fields(f, fl);
}

// Scale where the bulk of the mass sits, used to split quadrature ranges.
inline double bulk_scale(const DistSpec& s) {
    const auto fl = s.fields();
    if (fl.beta2) return *fl.beta2;
    return *fl.beta1 / 2.0;
}

// Integral of pdf over [lo, hi]; hi may be +infinity.
inline double integrate_pdf(const gbfam::Distribution& d, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double upper = std::min(hi, d.support_upper());
    auto f = [&](double x) {
        const double v = d.pdf(x);
        return std::isfinite(v) ? v : 0.0;
    };
    const double s = bulk_scale(d.spec());
    std::vector<double> cuts{lo};
    for (double c : {s / 16.0, s, 4.0 * s}) {
        if (c > cuts.back() && c < upper) cuts.push_back(c);
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += ts.integrate(f, cuts[i], cuts[i + 1], 1e-14);
    if (std::isfinite(upper)) {
        // Last piece written in the distance to the endpoint to resolve an
        // integrable singularity there.
        auto g = [&](double x, double xc) {
            const double at = xc > 0.0 ? upper - xc : x;
            const double v = d.pdf(at);
            return std::isfinite(v) ? v : 0.0;
        };
        total += ts.integrate(g, cuts.back(), upper, 1e-14);
    } else {
        boost::math::quadrature::exp_sinh<double> es;
        auto g = [&](double t) {
            const double v = d.pdf(cuts.back() + t);
            return std::isfinite(v) ? v : 0.0;
        };
        total += es.integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
    }
    return total;
}

// Interior evaluation points spread over the bulk of the distribution.
inline std::vector<double> interior_points(const gbfam::Distribution& d, int count) {
    std::vector<double> xs;
    for (int i = 1; i <= count; ++i) xs.push_back(d.quantile(static_cast<double>(i) / (count + 1)));
    return xs;
}

}  // namespace testsupport
