#include "gbfam/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "gbfam/distributions.hpp"
#include "gbfam/errors.hpp"
#include "gbfam/random.hpp"
#include "json.hpp"
#include "numeric_util.hpp"

namespace gbfam {

using detail::kInf;
using detail::softplus;
using detail::softplus_inv;

namespace {

using Vec = std::vector<double>;

double massey_c(double level) {
    if (level == 0.05) return 1.358;
    if (level == 0.01) return 1.628;
    return std::sqrt(-0.5 * std::log(level / 2.0));
}

double ks_sorted(const Vec& sorted, const Distribution& d) {
    const double n = static_cast<double>(sorted.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = d.cdf(sorted[i]);
        dmax = std::max({dmax, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return dmax;
}

// Which flat fields a family carries, in the order used by the optimizer.
struct Layout {
    bool alpha, beta1, beta2, p, q;
    std::size_t size() const { return alpha + beta1 + beta2 + p + q; }
};

Layout layout_of(Family f) {
    switch (f) {
        case Family::GB:
        case Family::mGB:
        case Family::tildeMGB: return {true, true, true, true, true};
        case Family::B:
        case Family::mB: return {false, true, true, true, true};
        case Family::GB1: return {true, true, false, true, true};
        case Family::GB2:
        case Family::mGB2: return {true, false, true, true, true};
        case Family::B2:
        case Family::mB2: return {false, false, true, true, true};
        case Family::GGa: return {true, false, true, true, false};
        case Family::GIGa: return {true, false, true, false, true};
    }
    return {};
}

class Codec {
public:
    Codec(Family f, double max_sample) : family_(f), layout_(layout_of(f)), max_(max_sample) {}

    Vec encode(const DistSpec& s) const {
        const auto fl = s.fields();
        Vec t;
        if (layout_.alpha) t.push_back(std::log(*fl.alpha));
        if (layout_.beta1) {
            const double slack = std::max(*fl.beta1 / max_ - 1.0, 1e-8);
            t.push_back(softplus_inv(slack));
        }
        if (layout_.beta2) t.push_back(std::log(*fl.beta2));
        if (layout_.p) t.push_back(std::log(*fl.p));
        if (layout_.q) t.push_back(std::log(*fl.q));
        return t;
    }

    DistSpec decode(const Vec& t) const {
        SpecFields fl;
        std::size_t k = 0;
        if (layout_.alpha) fl.alpha = std::exp(t[k++]);
        if (layout_.beta1) fl.beta1 = max_ * (1.0 + softplus(t[k++]));
        if (layout_.beta2) fl.beta2 = std::exp(t[k++]);
        if (layout_.p) fl.p = std::exp(t[k++]);
        if (layout_.q) fl.q = std::exp(t[k++]);
        return DistSpec::from_fields(family_, fl);
    }

private:
    Family family_;
    Layout layout_;
    double max_;
};

struct MinResult {
    Vec x;
    double f;
    bool converged;
    int iterations;
};

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

Vec gradient(const std::function<double(const Vec&)>& f, const Vec& x, double fx, double h) {
    Vec g(x.size());
    Vec y = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = x[i] + h;
        const double fp = f(y);
        y[i] = x[i] - h;
        const double fm = f(y);
        y[i] = x[i];
        if (std::isfinite(fp) && std::isfinite(fm)) {
            g[i] = (fp - fm) / (2.0 * h);
        } else if (std::isfinite(fp)) {
            g[i] = (fp - fx) / h;
        } else if (std::isfinite(fm)) {
            g[i] = (fx - fm) / h;
        } else {
            g[i] = 0.0;
        }
    }
    return g;
}

// Quasi-Newton descent (BFGS inverse-Hessian update) with Armijo backtracking.
MinResult minimize(const std::function<double(const Vec&)>& f, Vec x, const FitOptions& opt) {
    const std::size_t n = x.size();
    double fx = f(x);
    if (!std::isfinite(fx)) throw DomainError("objective is not finite at the initial point");
    Vec g = gradient(f, x, fx, opt.fd_step);
    std::vector<Vec> H(n, Vec(n, 0.0));
    auto reset = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(H[i].begin(), H[i].end(), 0.0);
            H[i][i] = 1.0;
        }
    };
    reset();
    bool fresh = true;  // H is the identity

    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        if (std::sqrt(dot(g, g)) < opt.grad_tol) return {x, fx, true, it};

        Vec d(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) d[i] = -dot(H[i], g);
        double slope = dot(g, d);
        if (!(slope < 0.0)) {
            reset();
            fresh = true;
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            slope = dot(g, d);
        }
        double dmax = 0.0;
        for (double v : d) dmax = std::max(dmax, std::abs(v));
        double t = std::min(1.0, 2.0 / dmax);

        Vec xn(n);
        double fn = kInf;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + t * d[i];
            fn = f(xn);
            if (std::isfinite(fn) && fn <= fx + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // Steepest descent failed too.
            if (fresh) return {x, fx, false, it + 1};
            reset();
            fresh = true;
            continue;
        }

        Vec gn = gradient(f, xn, fn, opt.fd_step);
        const bool small_change = std::abs(fx - fn) <= opt.rel_tol * std::max(std::abs(fx), 1e-300);
        Vec s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = gn[i] - g[i];
        }
        x = xn;
        fx = fn;
        g = gn;
        if (small_change) return {x, fx, true, it + 1};

        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
            fresh = false;
            Vec Hy(n);
            for (std::size_t i = 0; i < n; ++i) Hy[i] = dot(H[i], y);
            const double yHy = dot(y, Hy);
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    H[i][j] += (1.0 + yHy * rho) * rho * s[i] * s[j] - rho * (Hy[i] * s[j] + s[i] * Hy[j]);
                }
            }
        }
    }
    return {x, fx, std::sqrt(dot(g, g)) < opt.grad_tol, it};
}

Vec checked_samples(const Vec& samples) {
    if (samples.size() < 35) throw DomainError("fit needs at least 35 samples");
    for (double x : samples) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("fit samples must be positive and finite");
    }
    Vec sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) throw DomainError("fit refuses a degenerate single-point sample");
    return sorted;
}

double median_of_sorted(const Vec& s) {
    const std::size_t n = s.size();
    return n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

double mean_nll(const Vec& samples, const Distribution& d) {
    double acc = 0.0;
    for (double x : samples) acc -= d.log_pdf(x);
    return acc / static_cast<double>(samples.size());
}

using Objective = std::function<double(const Distribution&)>;

FitResult run_fit(const Vec& samples, Family family, const std::optional<DistSpec>& init,
                  const FitOptions& opt, const Objective& objective, const Vec& sorted) {
    if (init && init->family() != family) throw DomainError("init spec has a different family");
    const DistSpec start = init ? *init : default_init(samples, family);
    const Codec codec(family, sorted.back());

    auto f = [&](const Vec& t) {
        try {
            const Distribution d(codec.decode(t));
            const double v = objective(d);
            return std::isnan(v) ? kInf : v;
        } catch (const DomainError&) {
            return kInf;
        } catch (const NumericError&) {
            return kInf;
        }
    };

    const MinResult m = minimize(f, codec.encode(start), opt);
    const DistSpec fitted = codec.decode(m.x);
    const Distribution d(fitted);
    const double n = static_cast<double>(samples.size());
    return FitResult{fitted,
                     ks_sorted(sorted, d),
                     massey_c(opt.ks_alpha_level) / std::sqrt(n),
                     mean_nll(samples, d) * n,
                     m.converged,
                     m.iterations};
}

}  // namespace

double ks_statistic(std::vector<double> samples, const DistSpec& spec) {
    if (samples.empty()) throw DomainError("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    return ks_sorted(samples, Distribution(spec));
}

double ks_threshold(std::size_t n, double alpha_level) {
    if (n < 35) throw DomainError("ks_threshold: n must be at least 35");
    if (!(alpha_level > 0.0 && alpha_level < 1.0)) throw DomainError("ks_threshold: level must lie in (0, 1)");
    return massey_c(alpha_level) / std::sqrt(static_cast<double>(n));
}

double neg_log_likelihood(const std::vector<double>& samples, const DistSpec& spec) {
    if (samples.empty()) throw DomainError("neg_log_likelihood: empty sample");
    const Distribution d(spec);
    return mean_nll(samples, d) * static_cast<double>(samples.size());
}

DistSpec default_init(const std::vector<double>& samples, Family family) {
    const Vec sorted = checked_samples(samples);
    const double med = median_of_sorted(sorted);
    const double mx = sorted.back();
    SpecFields fl;
    const Layout lay = layout_of(family);
    if (lay.alpha) fl.alpha = 2.0;
    if (lay.beta1) fl.beta1 = 1.5 * mx;
    if (lay.beta2) fl.beta2 = med;
    if (lay.p) fl.p = 1.0;
    if (lay.q) fl.q = 1.0;
    return DistSpec::from_fields(family, fl);
}

FitResult fit_mle(const std::vector<double>& samples, Family family,
                  const std::optional<DistSpec>& init, const FitOptions& options) {
    const Vec sorted = checked_samples(samples);
    return run_fit(samples, family, init, options,
                   [&](const Distribution& d) { return mean_nll(sorted, d); }, sorted);
}

FitResult fit_cdf_lsq(const std::vector<double>& samples, Family family,
                      const std::optional<DistSpec>& init, const FitOptions& options) {
    const Vec sorted = checked_samples(samples);
    const double n = static_cast<double>(sorted.size());
    auto objective = [&](const Distribution& d) {
        double acc = 0.0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const double r = (static_cast<double>(i) + 0.5) / n - d.cdf(sorted[i]);
            acc += r * r;
        }
        return acc / n;
    };
    return run_fit(samples, family, init, options, objective, sorted);
}

CiBand bootstrap_ci(const DistSpec& spec, std::size_t n, std::size_t replicas, double level,
                    const std::vector<double>& grid, std::uint64_t seed) {
    if (replicas < 100) throw DomainError("bootstrap_ci: replicas must be at least 100");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("bootstrap_ci: level must lie in (0, 1)");
    if (grid.empty()) throw DomainError("bootstrap_ci: empty grid");
    if (n < 35) throw DomainError("bootstrap_ci: n must be at least 35");

    std::vector<Vec> curves;  // per replica
    std::size_t dropped = 0;
    for (std::size_t r = 0; r < replicas; ++r) {
        auto key = make_stream(seed, r);
        const Vec draws = Distribution(spec).sample(n, key());
        FitResult fit = [&] {
            try {
                return fit_mle(draws, spec.family(), spec);
            } catch (const DomainError&) {
                return FitResult{spec, 0.0, 0.0, 0.0, false, 0};
            }
        }();
        if (!fit.converged) {
            ++dropped;
            continue;
        }
        const Distribution d(fit.spec);
        Vec c(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) c[i] = d.ccdf(grid[i]);
        curves.push_back(std::move(c));
    }
    if (static_cast<double>(dropped) > 0.2 * static_cast<double>(replicas)) {
        throw NumericError("bootstrap_ci: more than 20% of replica fits did not converge",
                           static_cast<double>(dropped));
    }

    auto pick = [](Vec& v, double prob) {
        std::sort(v.begin(), v.end());
        const double pos = prob * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    CiBand band{grid, Vec(grid.size()), Vec(grid.size()), level, curves.size(), dropped};
    Vec column(curves.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t r = 0; r < curves.size(); ++r) column[r] = curves[r][i];
        band.lower[i] = std::clamp(pick(column, 0.5 * (1.0 - level)), 0.0, 1.0);
        band.upper[i] = std::clamp(pick(column, 0.5 * (1.0 + level)), band.lower[i], 1.0);
    }
    return band;
}

std::string to_json(const FitResult& r) {
    nlohmann::json params = nlohmann::json::object();
    const auto fl = r.spec.fields();
    if (fl.alpha) params["alpha"] = *fl.alpha;
    if (fl.beta1) params["beta1"] = *fl.beta1;
    if (fl.beta2) params["beta2"] = *fl.beta2;
    if (fl.p) params["p"] = *fl.p;
    if (fl.q) params["q"] = *fl.q;
    nlohmann::json j;
    j["family"] = std::string(to_string(r.spec.family()));
    j["params"] = params;
    j["ks"] = r.ks;
    j["ks_threshold"] = r.ks_threshold;
    j["nll"] = r.neg_log_likelihood;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    return j.dump(2);
}

std::string to_tsv(const CiBand& band) {
    std::ostringstream os;
    os.precision(17);
    os << "x\tlower\tupper\n";
    for (std::size_t i = 0; i < band.grid.size(); ++i) {
        os << band.grid[i] << '\t' << band.lower[i] << '\t' << band.upper[i] << '\n';
    }
    return os.str();
}

}  // namespace gbfam
