#include "gbfam/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "gbfam/errors.hpp"
#include "gbfam/random.hpp"
#include "gbfam/specfun.hpp"
#include "numeric_util.hpp"

namespace gbfam {

using detail::kInf;
using detail::softplus;
using detail::xlogy;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

// Shared intermediate quantities of the beta-type kernels at one point.
struct Distribution::Point {
    double x;
    double log_x_b1;  // ln(x/beta1)
    double u;         // (x/beta1)^alpha
    double omu;       // 1 - u without cancellation
    double la2;       // alpha ln(x/beta2)
    double v;         // (x/beta2)^alpha
    double log1pv;    // ln(1 + v)
    double y;         // seed CDF (u + v)/(1 + v)
    double yc;        // 1 - y = (1 - u)/(1 + v)
};

Distribution::Distribution(DistSpec spec) : spec_(std::move(spec)), beta1_(kInf), beta2_(kInf) {
    switch (spec_.family()) {
        case Family::GB:
        case Family::mGB:
        case Family::tildeMGB: {
            const auto& v = spec_.get<GBParams>();
            alpha_ = v.alpha;
            beta1_ = v.beta1;
            beta2_ = v.beta2;
            p_ = v.p;
            q_ = v.q;
            kernel_ = spec_.family() == Family::GB    ? Kernel::Beta
                      : spec_.family() == Family::mGB ? Kernel::ModifiedBeta
                                                      : Kernel::Tilde;
            break;
        }
        case Family::B:
        case Family::mB: {
            const auto& v = spec_.get<BParams>();
            beta1_ = v.beta1;
            beta2_ = v.beta2;
            p_ = v.p;
            q_ = v.q;
            kernel_ = spec_.family() == Family::B ? Kernel::Beta : Kernel::ModifiedBeta;
            break;
        }
        case Family::GB1: {
            const auto& v = spec_.get<GB1Params>();
            alpha_ = v.alpha;
            beta1_ = v.beta1;
            p_ = v.p;
            q_ = v.q;
            kernel_ = Kernel::Beta;
            break;
        }
        case Family::GB2:
        case Family::mGB2: {
            const auto& v = spec_.get<GB2Params>();
            alpha_ = v.alpha;
            beta2_ = v.beta2;
            p_ = v.p;
            q_ = spec_.family() == Family::mGB2 ? v.q + 1.0 : v.q;
            kernel_ = Kernel::BetaPrime;
            break;
        }
        case Family::B2:
        case Family::mB2: {
            const auto& v = spec_.get<B2Params>();
            beta2_ = v.beta2;
            p_ = v.p;
            q_ = spec_.family() == Family::mB2 ? v.q + 1.0 : v.q;
            kernel_ = Kernel::BetaPrime;
            break;
        }
        case Family::GGa: {
            const auto& v = spec_.get<GGaParams>();
            alpha_ = v.alpha;
            beta2_ = v.beta;
            p_ = v.p;
            kernel_ = Kernel::Gamma;
            break;
        }
        case Family::GIGa: {
            const auto& v = spec_.get<GIGaParams>();
            alpha_ = v.alpha;
            beta2_ = v.beta;
            q_ = v.q;
            kernel_ = Kernel::InverseGamma;
            break;
        }
    }
    upper_ = beta1_;

    const bool beta_like = kernel_ == Kernel::Beta || kernel_ == Kernel::ModifiedBeta ||
                           kernel_ == Kernel::Tilde || kernel_ == Kernel::BetaPrime;
    if (beta_like) ln_beta_pq_ = specfun::ln_beta(p_, q_);
    if (std::isfinite(beta1_)) {
        ln_ratio_ = alpha_ * std::log(beta1_ / beta2_);
        log1p_r_ = softplus(ln_ratio_);
        if (ln_ratio_ > 600.0) throw DomainError("(beta1/beta2)^alpha overflows");
    }

    const double la = std::log(alpha_);
    switch (kernel_) {
        case Kernel::Beta:
            log_norm_ = la - std::log(beta1_) - ln_beta_pq_ + p_ * log1p_r_;
            break;
        case Kernel::ModifiedBeta: {
            // ln(p + (1+r) q) = ln(1+r) + ln(q + p/(1+r))
            const double ln_den = log1p_r_ + std::log(q_ + p_ * std::exp(-log1p_r_));
            log_norm_ = la + std::log(p_ + q_) + (p_ + 1.0) * log1p_r_ - std::log(beta1_) -
                        ln_den - ln_beta_pq_;
            const double rho = std::exp(-ln_ratio_);
            mod_coef_ = std::exp(-ln_beta_pq_) / (q_ + rho * (p_ + q_));
            break;
        }
        case Kernel::Tilde: {
            const double qs = q_ - 1.0 / alpha_;
            const double f21 = specfun::gauss_2f1(p_, p_ + q_ + 1.0, p_ + qs + 1.0,
                                                  -std::exp(ln_ratio_));
            tilde_log_norm_ = specfun::ln_beta(p_, qs + 1.0) + std::log(f21);
            log_norm_ = la - std::log(beta1_) - tilde_log_norm_;
            break;
        }
        case Kernel::BetaPrime:
            log_norm_ = la - std::log(beta2_) - ln_beta_pq_;
            break;
        case Kernel::Gamma:
            log_norm_ = la - std::log(beta2_) - specfun::log_abs_gamma(p_);
            break;
        case Kernel::InverseGamma:
            log_norm_ = la - std::log(beta2_) - specfun::log_abs_gamma(q_);
            break;
    }
}

Distribution::Point Distribution::at(double x) const {
    Point pt{};
    pt.x = x;
    pt.log_x_b1 = std::log(x / beta1_);
    const double la1 = alpha_ * pt.log_x_b1;
    pt.u = std::exp(la1);
    pt.omu = -std::expm1(la1);
    pt.la2 = alpha_ * std::log(x / beta2_);
    pt.v = std::exp(pt.la2);
    pt.log1pv = softplus(pt.la2);
    pt.y = (pt.u + pt.v) / (1.0 + pt.v);
    pt.yc = pt.omu / (1.0 + pt.v);
    return pt;
}

double Distribution::log_pdf(double x) const {
    if (std::isnan(x)) return detail::kNaN;
    if (x < 0.0 || x > upper_ || std::isinf(x)) return -kInf;
    switch (kernel_) {
        case Kernel::Beta:
        case Kernel::ModifiedBeta:
        case Kernel::Tilde: {
            const Point pt = at(x);
            const double q_exp = kernel_ == Kernel::Tilde ? q_ - 1.0 / alpha_ : q_ - 1.0;
            const double tail = kernel_ == Kernel::Beta ? p_ + q_ : p_ + q_ + 1.0;
            return log_norm_ + xlogy(alpha_ * p_ - 1.0, x / beta1_) + xlogy(q_exp, pt.omu) -
                   tail * pt.log1pv;
        }
        case Kernel::BetaPrime: {
            const double la2 = alpha_ * std::log(x / beta2_);
            return log_norm_ + xlogy(alpha_ * p_ - 1.0, x / beta2_) - (p_ + q_) * softplus(la2);
        }
        case Kernel::Gamma:
            return log_norm_ + xlogy(alpha_ * p_ - 1.0, x / beta2_) - std::pow(x / beta2_, alpha_);
        case Kernel::InverseGamma:
            if (x == 0.0) return -kInf;
            return log_norm_ - (alpha_ * q_ + 1.0) * std::log(x / beta2_) -
                   std::pow(x / beta2_, -alpha_);
    }
    return detail::kNaN;
}

double Distribution::pdf(double x) const { return std::exp(log_pdf(x)); }

double Distribution::tilde_cdf_lower(const Point& pt) const {
    // Closed form with two Appell functions, used while (x/beta1)^alpha <= 1/2.
    const double b1 = 1.0 / alpha_ - q_;
    const double f_a = specfun::appell_f1(p_, b1, p_ + q_, p_ + 1.0, pt.u, -pt.v);
    const double f_b = specfun::appell_f1(p_ + 1.0, b1, p_ + q_ + 1.0, p_ + 2.0, pt.u, -pt.v);
    const double front = std::exp(p_ * alpha_ * pt.log_x_b1 - tilde_log_norm_);
    return front * (f_a / p_ - pt.v / (p_ + 1.0) * f_b);
}

double Distribution::tilde_ccdf_upper(const Point& pt) const {
    // Tail integral from x to beta1 after the substitution u = 1 - (1-U) w;
    // both Appell arguments then stay in [0, 1/2].
    const double qs = q_ - 1.0 / alpha_;
    const double delta = pt.omu;
    const double y_arg = delta * std::exp(ln_ratio_ - log1p_r_);
    const double f = specfun::appell_f1(qs + 1.0, 1.0 - p_, p_ + q_ + 1.0, qs + 2.0, delta, y_arg);
    const double front = std::exp((qs + 1.0) * std::log(delta) - (p_ + q_ + 1.0) * log1p_r_ -
                                  std::log(qs + 1.0) - tilde_log_norm_);
    return front * f;
}

double Distribution::cdf(double x) const {
    if (std::isnan(x)) return detail::kNaN;
    if (x <= 0.0) return 0.0;
    if (x >= upper_) return 1.0;
    switch (kernel_) {
        case Kernel::Beta: {
            const Point pt = at(x);
            return specfun::reg_inc_beta(pt.y, p_, q_);
        }
        case Kernel::ModifiedBeta: {
            const Point pt = at(x);
            const double extra = mod_coef_ * std::pow(pt.yc, q_) * std::pow(pt.y, p_);
            return std::clamp(specfun::reg_inc_beta(pt.y, p_, q_) + extra, 0.0, 1.0);
        }
        case Kernel::Tilde: {
            const Point pt = at(x);
            if (pt.u <= 0.5) return std::clamp(tilde_cdf_lower(pt), 0.0, 1.0);
            return std::clamp(1.0 - tilde_ccdf_upper(pt), 0.0, 1.0);
        }
        case Kernel::BetaPrime: {
            const double la2 = alpha_ * std::log(x / beta2_);
            return specfun::reg_inc_beta(std::exp(la2 - softplus(la2)), p_, q_);
        }
        case Kernel::Gamma:
            return specfun::reg_inc_gamma_lower(p_, std::pow(x / beta2_, alpha_));
        case Kernel::InverseGamma:
            return specfun::reg_inc_gamma_upper(q_, std::pow(x / beta2_, -alpha_));
    }
    return detail::kNaN;
}

double Distribution::ccdf(double x) const {
    if (std::isnan(x)) return detail::kNaN;
    if (x <= 0.0) return 1.0;
    if (x >= upper_) return 0.0;
    switch (kernel_) {
        case Kernel::Beta: {
            const Point pt = at(x);
            return specfun::reg_inc_beta(pt.yc, q_, p_);
        }
        case Kernel::ModifiedBeta: {
            const Point pt = at(x);
            const double extra = mod_coef_ * std::pow(pt.yc, q_) * std::pow(pt.y, p_);
            return std::clamp(specfun::reg_inc_beta(pt.yc, q_, p_) - extra, 0.0, 1.0);
        }
        case Kernel::Tilde: {
            const Point pt = at(x);
            if (pt.u <= 0.5) return std::clamp(1.0 - tilde_cdf_lower(pt), 0.0, 1.0);
            return std::clamp(tilde_ccdf_upper(pt), 0.0, 1.0);
        }
        case Kernel::BetaPrime: {
            const double la2 = alpha_ * std::log(x / beta2_);
            return specfun::reg_inc_beta(std::exp(-softplus(la2)), q_, p_);
        }
        case Kernel::Gamma:
            return specfun::reg_inc_gamma_upper(p_, std::pow(x / beta2_, alpha_));
        case Kernel::InverseGamma:
            return specfun::reg_inc_gamma_lower(q_, std::pow(x / beta2_, -alpha_));
    }
    return detail::kNaN;
}

double Distribution::quantile_beta(double u) const {
    const auto root = specfun::inv_reg_inc_beta_split(u, p_, q_);
    const double r = std::isfinite(beta2_) ? std::exp(ln_ratio_) : 0.0;
    // Invert y = a (1 + r) / (1 + r a) for a = (x/beta1)^alpha.
    const double a = root.y / (1.0 + r * root.one_minus_y);
    if (a <= 0.5) return beta1_ * std::exp(std::log(a) / alpha_);
    const double one_minus_a = root.one_minus_y * (1.0 + r) / (1.0 + r * root.one_minus_y);
    return std::min(beta1_, beta1_ * std::exp(std::log1p(-one_minus_a) / alpha_));
}

double Distribution::quantile_beta_prime(double u) const {
    const auto root = specfun::inv_reg_inc_beta_split(u, p_, q_);
    return beta2_ * std::exp((std::log(root.y) - std::log(root.one_minus_y)) / alpha_);
}

double Distribution::quantile_search(double u) const {
    const bool upper_tail = u > 0.5;
    const double target = upper_tail ? 1.0 - u : u;
    // Increasing residual in x for both tails; its derivative is the pdf.
    auto residual = [&](double x) { return upper_tail ? target - ccdf(x) : cdf(x) - target; };

    double lo = 0.0;
    double hi = upper_;
    if (!std::isfinite(hi)) {
        hi = beta2_;
        for (int i = 0; i < 2100 && residual(hi) < 0.0; ++i) {
            lo = hi;
            hi *= 2.0;
        }
    }

    double x;
    if (kernel_ == Kernel::ModifiedBeta || kernel_ == Kernel::Tilde) {
        x = std::clamp(quantile_beta(u), lo, hi);  // GB with the same record is close
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    } else {
        x = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    }

    const double tol = 1e-14 * std::max(target, 1e-300);
    for (int it = 0; it < 500; ++it) {
        const double res = residual(x);
        if (res == 0.0 || std::abs(res) <= tol) return x;
        if (res < 0.0) lo = x; else hi = x;
        const double d = pdf(x);
        double next = x - res / d;
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            if (lo == 0.0) {
                next = hi * 0.125;
                if (!(next > lo && next < x) && res > 0.0) next = 0.5 * (lo + hi);
            } else {
                next = hi / lo > 8.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
            }
        }
        if (std::abs(next - x) <= 4.0 * kEps * x || hi - lo <= 4.0 * kEps * hi) return next;
        x = next;
    }
    throw NumericError("quantile search did not converge", x);
}

double Distribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u must lie in [0, 1]");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return upper_;
    switch (kernel_) {
        case Kernel::Beta: return quantile_beta(u);
        case Kernel::BetaPrime: return quantile_beta_prime(u);
        default: return quantile_search(u);
    }
}

std::vector<double> Distribution::sample(std::size_t count, std::uint64_t seed) const {
    if (count == 0) throw DomainError("sample: count must be at least 1");
    auto rng = make_stream(seed, 0);
    std::vector<double> out(count);
    for (auto& x : out) x = quantile(uniform_open01(rng));
    return out;
}

double pdf(const DistSpec& spec, double x) { return Distribution(spec).pdf(x); }
double cdf(const DistSpec& spec, double x) { return Distribution(spec).cdf(x); }
double ccdf(const DistSpec& spec, double x) { return Distribution(spec).ccdf(x); }
double quantile(const DistSpec& spec, double u) { return Distribution(spec).quantile(u); }

std::vector<double> sample(const DistSpec& spec, std::size_t count, std::uint64_t seed) {
    return Distribution(spec).sample(count, seed);
}

double pdf_alt(const DistSpec& spec, double x) {
    if (spec.family() != Family::GB) throw DomainError("pdf_alt is defined for the GB tag only");
    const auto& g = spec.get<GBParams>();
    if (x < 0.0 || x > g.beta1) return 0.0;
    const double ap = g.alpha * g.p;
    if (x == 0.0) {
        if (ap > 1.0) return 0.0;
        if (ap < 1.0) return kInf;
        return Distribution(spec).pdf(0.0);
    }
    const double lnb = specfun::ln_beta(g.p, g.q);
    const double la1 = g.alpha * std::log(x / g.beta1);
    const double la2 = g.alpha * std::log(x / g.beta2);
    // ln((x/b1)^a + (x/b2)^a) = ln u + ln(1 + (b1/b2)^a)
    const double ln_sum = la1 + softplus(g.alpha * std::log(g.beta1 / g.beta2));
    const double lv = std::log(g.alpha) - std::log(x) - lnb + g.p * ln_sum +
                      xlogy(g.q - 1.0, -std::expm1(la1)) - (g.p + g.q) * softplus(la2);
    return std::exp(lv);
}

double seed_cdf(double alpha, double beta1, double beta2, double x) {
    if (!(alpha > 0.0 && beta1 > 0.0 && beta2 > 0.0)) {
        throw DomainError("seed_cdf: alpha, beta1, beta2 must be positive");
    }
    if (!(x >= 0.0 && x <= beta1)) throw DomainError("seed_cdf: x must lie in [0, beta1]");
    const double u = std::pow(x / beta1, alpha);
    const double v = std::pow(x / beta2, alpha);
    return (u + v) / (1.0 + v);
}

double seed_pdf(double alpha, double beta1, double beta2, double x) {
    if (!(alpha > 0.0 && beta1 > 0.0 && beta2 > 0.0)) {
        throw DomainError("seed_pdf: alpha, beta1, beta2 must be positive");
    }
    if (!(x >= 0.0 && x <= beta1)) throw DomainError("seed_pdf: x must lie in [0, beta1]");
    const double u = std::pow(x / beta1, alpha);
    const double v = std::pow(x / beta2, alpha);
    if (x == 0.0) {
        if (alpha > 1.0) return 0.0;
        if (alpha < 1.0) return kInf;
        return 1.0 / beta1 + 1.0 / beta2;
    }
    return alpha * (u + v) / (x * (1.0 + v) * (1.0 + v));
}

double generator_pdf(double seed_F, double seed_f, double p, double q) {
    if (!(p > 0.0 && q > 0.0)) throw DomainError("generator_pdf: p and q must be positive");
    if (!(seed_F >= 0.0 && seed_F <= 1.0)) throw DomainError("generator_pdf: F must lie in [0, 1]");
    if (!(seed_f >= 0.0)) throw DomainError("generator_pdf: f must be nonnegative");
    const double lv = xlogy(p - 1.0, seed_F) + detail::xlog1py(q - 1.0, -seed_F) -
                      specfun::ln_beta(p, q);
    return seed_f * std::exp(lv);
}

DistSpec power_change_of_variable(const DistSpec& base, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("power_change_of_variable: alpha must be positive");
    const double k = 1.0 / alpha;
    switch (base.family()) {
        case Family::B:
        case Family::mB: {
            const auto& b = base.get<BParams>();
            GBParams g{alpha, std::pow(b.beta1, k), std::pow(b.beta2, k), b.p, b.q};
            return base.family() == Family::B ? DistSpec::gb(g) : DistSpec::mgb(g);
        }
        case Family::B2:
        case Family::mB2: {
            const auto& b = base.get<B2Params>();
            GB2Params g{alpha, std::pow(b.beta2, k), b.p, b.q};
            return base.family() == Family::B2 ? DistSpec::gb2(g) : DistSpec::mgb2(g);
        }
        default:
            throw DomainError("power_change_of_variable: base must be an alpha = 1 member (B, mB, B2, mB2)");
    }
}

namespace {

// One-step limits in a fixed order: beta1 -> inf first, then beta2 -> inf,
// then shape limits, then alpha = 1 reductions.
std::vector<DistSpec> direct_limits(const DistSpec& s) {
    std::vector<DistSpec> out;
    switch (s.family()) {
        case Family::GB: {
            const auto& g = s.get<GBParams>();
            out.push_back(DistSpec::gb2({g.alpha, g.beta2, g.p, g.q}));
            out.push_back(DistSpec::gb1({g.alpha, g.beta1, g.p, g.q}));
            if (g.alpha == 1.0) out.push_back(DistSpec::b({g.beta1, g.beta2, g.p, g.q}));
            break;
        }
        case Family::mGB: {
            const auto& g = s.get<GBParams>();
            out.push_back(DistSpec::mgb2({g.alpha, g.beta2, g.p, g.q}));
            out.push_back(DistSpec::gb1({g.alpha, g.beta1, g.p, g.q}));
            if (g.alpha == 1.0) out.push_back(DistSpec::mb({g.beta1, g.beta2, g.p, g.q}));
            break;
        }
        case Family::tildeMGB: {
            const auto& g = s.get<GBParams>();
            out.push_back(DistSpec::mgb2({g.alpha, g.beta2, g.p, g.q}));
            out.push_back(DistSpec::gb1({g.alpha, g.beta1, g.p, g.q - 1.0 / g.alpha + 1.0}));
            break;
        }
        case Family::B: {
            const auto& b = s.get<BParams>();
            out.push_back(DistSpec::b2({b.beta2, b.p, b.q}));
            out.push_back(DistSpec::gb1({1.0, b.beta1, b.p, b.q}));
            break;
        }
        case Family::mB: {
            const auto& b = s.get<BParams>();
            out.push_back(DistSpec::mb2({b.beta2, b.p, b.q}));
            out.push_back(DistSpec::gb1({1.0, b.beta1, b.p, b.q}));
            break;
        }
        case Family::GB1: {
            const auto& g = s.get<GB1Params>();
            out.push_back(DistSpec::gga({g.alpha, g.beta1 * std::pow(g.q, -1.0 / g.alpha), g.p}));
            break;
        }
        case Family::GB2:
        case Family::mGB2: {
            const auto& g = s.get<GB2Params>();
            const double qs = s.family() == Family::mGB2 ? g.q + 1.0 : g.q;
            out.push_back(DistSpec::giga({g.alpha, g.beta2 * std::pow(g.p, 1.0 / g.alpha), qs}));
            out.push_back(DistSpec::gga({g.alpha, g.beta2 * std::pow(qs, -1.0 / g.alpha), g.p}));
            if (g.alpha == 1.0) {
                out.push_back(s.family() == Family::GB2 ? DistSpec::b2({g.beta2, g.p, g.q})
                                                        : DistSpec::mb2({g.beta2, g.p, g.q}));
            }
            break;
        }
        case Family::B2:
        case Family::mB2: {
            const auto& b = s.get<B2Params>();
            const double qs = s.family() == Family::mB2 ? b.q + 1.0 : b.q;
            out.push_back(DistSpec::giga({1.0, b.beta2 * b.p, qs}));
            out.push_back(DistSpec::gga({1.0, b.beta2 / qs, b.p}));
            break;
        }
        case Family::GGa:
        case Family::GIGa:
            break;
    }
    return out;
}

}  // namespace

DistSpec hierarchy_limit(const DistSpec& spec, Family target) {
    if (spec.family() == target) return spec;
    std::deque<DistSpec> frontier{spec};
    while (!frontier.empty()) {
        const DistSpec cur = frontier.front();
        frontier.pop_front();
        for (auto& next : direct_limits(cur)) {
            if (next.family() == target) return next;
            frontier.push_back(std::move(next));
        }
    }
    throw DomainError("hierarchy_limit: " + std::string(to_string(target)) +
                      " is not reachable from " + std::string(to_string(spec.family())));
}

TailExponents tail_exponent(const DistSpec& spec) {
    double alpha = 0.0;
    double q_std = 0.0;
    switch (spec.family()) {
        case Family::GB:
        case Family::mGB: {
            const auto& g = spec.get<GBParams>();
            if (!(g.beta2 < g.beta1 / 10.0)) {
                throw DomainError("tail_exponent: power-law regime needs beta2 < beta1/10");
            }
            alpha = g.alpha;
            q_std = spec.family() == Family::GB ? g.q : g.q + 1.0;
            break;
        }
        case Family::GB2:
        case Family::mGB2: {
            const auto& g = spec.get<GB2Params>();
            alpha = g.alpha;
            q_std = spec.family() == Family::GB2 ? g.q : g.q + 1.0;
            break;
        }
        default:
            throw DomainError("tail_exponent: defined for GB, mGB, GB2 and mGB2");
    }
    const double s = -alpha * q_std;
    return {s, s - 1.0};
}

double ccdf_near_beta1(const DistSpec& spec, double x, NearBeta1Variant variant, double window) {
    if (spec.family() != Family::GB && spec.family() != Family::mGB) {
        throw DomainError("ccdf_near_beta1: needs a GB or mGB record");
    }
    if (!(window > 0.0 && window < 1.0)) throw DomainError("ccdf_near_beta1: window must lie in (0, 1)");
    const auto& g = spec.get<GBParams>();
    if (!(x >= g.beta1 * (1.0 - window) && x <= g.beta1)) {
        throw DomainError("ccdf_near_beta1: x is outside the asymptotic window below beta1");
    }
    const double la1 = g.alpha * std::log(x / g.beta1);
    const double omu = -std::expm1(la1);
    const double v = std::pow(x / g.beta2, g.alpha);
    const double yc = omu / (1.0 + v);
    double value = std::exp(xlogy(g.q, yc) - std::log(g.q) - specfun::ln_beta(g.p, g.q));
    if (variant == NearBeta1Variant::mGB) {
        value *= (1.0 + g.p / g.q) * std::pow(g.beta2 / g.beta1, g.alpha);
    }
    return value;
}

}  // namespace gbfam
