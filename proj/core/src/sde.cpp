#include "gbfam/sde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "gbfam/errors.hpp"
#include "gbfam/fit.hpp"
#include "gbfam/random.hpp"
#include "json.hpp"
#include "numeric_util.hpp"

namespace gbfam {

using detail::kInf;

namespace {

constexpr std::array<std::pair<SdeModel, std::string_view>, 5> kModelNames{{
    {SdeModel::B2, "B2"},
    {SdeModel::GB2, "GB2"},
    {SdeModel::mB, "mB"},
    {SdeModel::tildeMGB, "tildeMGB"},
    {SdeModel::B2B1Mix, "B2B1Mix"},
}};

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

double sq(double v) { return v * v; }

// sigma^2 in the units of the spec as given.
double variance(const SdeSpec& s, double x) {
    switch (s.model) {
        case SdeModel::B2:
            return sq(s.kappa) * x + sq(s.kappa2) * x * x;
        case SdeModel::GB2:
            return sq(s.kappa) * std::pow(x, 2.0 - s.alpha) + sq(s.kappa2) * x * x;
        case SdeModel::mB:
            if (s.kappa_form) {
                const double k2 = sq(s.kappa);
                return k2 * x * (1.0 - sq(s.kappa1) * x / k2) * (1.0 + sq(s.kappa2) * x / k2);
            }
            return x * (1.0 - x / s.beta1) * (1.0 + x / s.beta2);
        case SdeModel::tildeMGB:
            return std::pow(x, 2.0 - s.alpha) * (1.0 - std::pow(x / s.beta1, s.alpha)) *
                   (1.0 + std::pow(x / s.beta2, s.alpha));
        case SdeModel::B2B1Mix:
            return sq(s.kappa) * x + (2.0 * s.c - 1.0) * sq(s.kappa_tilde) * x * x;
    }
    return detail::kNaN;
}

double drift_of(const SdeSpec& s, double x) {
    if (s.model == SdeModel::GB2 || s.model == SdeModel::tildeMGB) {
        return -s.gamma * (x - s.theta * std::pow(x, 1.0 - s.alpha));
    }
    return -s.gamma * (x - s.theta);
}

bool zero_noise(const SdeSpec& s) {
    switch (s.model) {
        case SdeModel::B2:
        case SdeModel::GB2: return s.kappa == 0.0 && s.kappa2 == 0.0;
        case SdeModel::B2B1Mix: return s.kappa == 0.0 && (s.kappa_tilde == 0.0 || s.c == 0.5);
        case SdeModel::mB: return s.kappa_form && s.kappa == 0.0 && s.kappa1 == 0.0 && s.kappa2 == 0.0;
        case SdeModel::tildeMGB: return false;
    }
    return false;
}

double positive_shape(double value, const std::string& what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError("no normalizable steady state: requires " + what + " > 0");
    }
    return value;
}

}  // namespace

std::string_view to_string(SdeModel model) {
    for (const auto& [m, name] : kModelNames) {
        if (m == model) return name;
    }
    return "?";
}

SdeModel sde_model_from_string(std::string_view name) {
    for (const auto& [m, n] : kModelNames) {
        if (n == name) return m;
    }
    throw DomainError("unknown SDE model '" + std::string(name) + "'");
}

void validate(const SdeSpec& s) {
    require(s.gamma > 0.0 && std::isfinite(s.gamma), "gamma must be positive and finite");
    require(s.theta > 0.0 && std::isfinite(s.theta), "theta must be positive and finite");
    for (double k : {s.kappa, s.kappa1, s.kappa2, s.kappa_tilde}) {
        require(k >= 0.0 && std::isfinite(k), "diffusion amplitudes must be nonnegative and finite");
    }
    require(s.c >= 0.0 && s.c <= 1.0, "c must lie in [0, 1]");
    require(s.alpha > 0.0 && std::isfinite(s.alpha), "alpha must be positive and finite");
    require(s.beta1 > 0.0 && s.beta2 > 0.0, "beta1 and beta2 must be positive");
    if (s.model == SdeModel::tildeMGB) {
        require(std::isfinite(s.beta1) && std::isfinite(s.beta2), "tildeMGB needs finite beta1 and beta2");
    }
    if (s.model == SdeModel::mB && s.kappa_form && s.kappa == 0.0) {
        require(s.kappa1 == 0.0, "mB kappa form with kappa = 0 needs kappa1 = 0");
    }
}

std::vector<std::string> ignored_fields(const SdeSpec& s) {
    std::vector<std::string> out;
    auto flag = [&](bool used, double v, double unset, const char* name) {
        if (!used && v != unset) out.emplace_back(name);
    };
    const bool is_b2 = s.model == SdeModel::B2;
    const bool is_gb2 = s.model == SdeModel::GB2;
    const bool is_mb = s.model == SdeModel::mB;
    const bool is_tilde = s.model == SdeModel::tildeMGB;
    const bool is_mix = s.model == SdeModel::B2B1Mix;
    const bool mb_kappa = is_mb && s.kappa_form;
    const bool mb_beta = is_mb && !s.kappa_form;
    flag(is_b2 || is_gb2 || mb_kappa || is_mix, s.kappa, 0.0, "kappa");
    flag(mb_kappa, s.kappa1, 0.0, "kappa1");
    flag(is_b2 || is_gb2 || mb_kappa, s.kappa2, 0.0, "kappa2");
    flag(is_mix, s.kappa_tilde, 0.0, "kappa_tilde");
    flag(is_gb2 || is_tilde, s.alpha, 1.0, "alpha");
    flag(is_mix, s.c, 0.0, "c");
    flag(mb_beta || is_tilde, s.beta1, kInf, "beta1");
    flag(mb_beta || is_tilde, s.beta2, kInf, "beta2");
    return out;
}

SdeSpec canonical(const SdeSpec& s) {
    validate(s);
    if (s.model != SdeModel::mB || !s.kappa_form) return s;
    if (s.kappa == 0.0) {
        SdeSpec b2 = s;
        b2.model = SdeModel::B2;
        b2.kappa_form = false;
        return b2;
    }
    const double k2 = sq(s.kappa);
    SdeSpec out = s;
    out.kappa_form = false;
    out.gamma = s.gamma / k2;
    out.beta1 = s.kappa1 > 0.0 ? k2 / sq(s.kappa1) : kInf;
    out.beta2 = s.kappa2 > 0.0 ? k2 / sq(s.kappa2) : kInf;
    out.kappa = out.kappa1 = out.kappa2 = 0.0;
    return out;
}

double support_upper(const SdeSpec& s) {
    switch (s.model) {
        case SdeModel::mB:
            if (s.kappa_form) return s.kappa1 > 0.0 ? sq(s.kappa) / sq(s.kappa1) : kInf;
            return s.beta1;
        case SdeModel::tildeMGB:
            return s.beta1;
        case SdeModel::B2B1Mix: {
            const double sk = (2.0 * s.c - 1.0) * sq(s.kappa_tilde);
            return sk < 0.0 ? sq(s.kappa) / -sk : kInf;
        }
        default:
            return kInf;
    }
}

DriftDiffusion drift_diffusion(const SdeSpec& s, double x) {
    validate(s);
    const double upper = support_upper(s);
    if (!(x >= 0.0 && x <= upper) || std::isinf(x)) {
        throw DomainError("drift_diffusion: x outside the support");
    }
    return {drift_of(s, x), std::sqrt(std::max(0.0, variance(s, x)))};
}

DistSpec param_map(const SdeSpec& spec) {
    const SdeSpec s = canonical(spec);
    const double g = s.gamma;
    const double th = s.theta;
    switch (s.model) {
        case SdeModel::B2: {
            const double k2 = sq(s.kappa);
            const double kk2 = sq(s.kappa2);
            if (k2 == 0.0 && kk2 == 0.0) throw DomainError("no noise: kappa and kappa2 are both zero");
            if (kk2 == 0.0) return DistSpec::gga({1.0, k2 / (2.0 * g), 2.0 * g * th / k2});
            if (k2 == 0.0) return DistSpec::giga({1.0, 2.0 * g * th / kk2, 1.0 + 2.0 * g / kk2});
            return DistSpec::mb2({k2 / kk2, 2.0 * g * th / k2, 2.0 * g / kk2});
        }
        case SdeModel::GB2: {
            const double a = s.alpha;
            const double k2 = sq(s.kappa);
            const double kk2 = sq(s.kappa2);
            if (k2 == 0.0 && kk2 == 0.0) throw DomainError("no noise: kappa and kappa2 are both zero");
            if (kk2 == 0.0) {
                const double p = positive_shape((a - 1.0 + 2.0 * g * th / k2) / a,
                                                "alpha - 1 + 2 gamma theta/kappa^2");
                return DistSpec::gga({a, std::pow(a * k2 / (2.0 * g), 1.0 / a), p});
            }
            if (k2 == 0.0) {
                return DistSpec::giga({a, std::pow(2.0 * g * th / (a * kk2), 1.0 / a),
                                       (1.0 + 2.0 * g / kk2) / a});
            }
            const double p = positive_shape((a - 1.0 + 2.0 * g * th / k2) / a,
                                            "alpha - 1 + 2 gamma theta/kappa^2");
            const double q = positive_shape((1.0 - a + 2.0 * g / kk2) / a,
                                            "1 - alpha + 2 gamma/kappa2^2");
            return DistSpec::mgb2({a, std::pow(k2 / kk2, 1.0 / a), p, q});
        }
        case SdeModel::mB: {
            const double b1 = s.beta1;
            const double b2 = s.beta2;
            const double p = 2.0 * g * th;
            if (std::isinf(b1) && std::isinf(b2)) return DistSpec::gga({1.0, 1.0 / (2.0 * g), p});
            if (std::isinf(b1)) return DistSpec::mb2({b2, p, 2.0 * g * b2});
            if (!(th < b1)) throw DomainError("no normalizable steady state: requires theta < beta1");
            if (std::isinf(b2)) return DistSpec::gb1({1.0, b1, p, 2.0 * g * (b1 - th)});
            return DistSpec::mb({b1, b2, p, 2.0 * g * (b1 - th) / (1.0 + b1 / b2)});
        }
        case SdeModel::tildeMGB: {
            const double a = s.alpha;
            const double b1a = std::pow(s.beta1, a);
            const double p = positive_shape((a - 1.0 + 2.0 * g * th) / a, "alpha - 1 + 2 gamma theta");
            const double q = (1.0 - a + 2.0 * g * (b1a - th) / (1.0 + std::pow(s.beta1 / s.beta2, a))) / a;
            if (!(q - 1.0 / a + 1.0 > 0.0)) {
                throw DomainError("no normalizable steady state: requires q > 1/alpha - 1");
            }
            positive_shape(q, "q = (1 - alpha + 2 gamma (beta1^alpha - theta)/(1 + (beta1/beta2)^alpha))/alpha");
            return DistSpec::tilde_mgb({a, s.beta1, s.beta2, p, q});
        }
        case SdeModel::B2B1Mix: {
            const double k2 = sq(s.kappa);
            const double sk = (2.0 * s.c - 1.0) * sq(s.kappa_tilde);
            if (k2 == 0.0 && sk <= 0.0) {
                throw DomainError("no normalizable steady state: requires kappa > 0 unless (2c-1) kappa_tilde^2 > 0");
            }
            if (k2 == 0.0) return DistSpec::giga({1.0, 2.0 * g * th / sk, 1.0 + 2.0 * g / sk});
            const double p = 2.0 * g * th / k2;
            if (sk == 0.0) return DistSpec::gga({1.0, k2 / (2.0 * g), p});
            if (sk > 0.0) return DistSpec::mb2({k2 / sk, p, 2.0 * g / sk});
            const double b1 = k2 / -sk;
            if (!(th < b1)) {
                throw DomainError("no normalizable steady state: requires theta < kappa^2/((1-2c) kappa_tilde^2)");
            }
            return DistSpec::gb1({1.0, b1, p, 2.0 * g * (b1 - th) / k2});
        }
    }
    throw DomainError("unknown SDE model");
}

IntegrationConfig resolved(const SdeSpec& spec, const IntegrationConfig& config) {
    const double g = canonical(spec).gamma;
    IntegrationConfig out = config;
    if (!out.dt) out.dt = 1e-3 / g;
    if (!out.burn_in) out.burn_in = 20.0 / g;
    if (!out.thin) out.thin = 1.0 / g;
    require(*out.dt > 0.0 && std::isfinite(*out.dt), "dt must be positive");
    require(*out.burn_in >= 0.0 && std::isfinite(*out.burn_in), "burn_in must be nonnegative");
    require(*out.thin > 0.0 && std::isfinite(*out.thin), "thin must be positive");
    require(out.paths >= 1, "paths must be at least 1");
    require(out.samples_per_path >= 1, "samples_per_path must be at least 1");
    return out;
}

Ensemble integrate(const SdeSpec& spec, const IntegrationConfig& config) {
    const SdeSpec s = canonical(spec);
    if (!zero_noise(s)) param_map(s);  // refuse up front
    const IntegrationConfig cfg = resolved(s, config);

    const double dt = *cfg.dt;
    const double sqdt = std::sqrt(dt);
    const auto burn_steps = static_cast<std::size_t>(std::llround(*cfg.burn_in / dt));
    const auto thin_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(*cfg.thin / dt)));
    const double upper = support_upper(s);
    const bool bounded = std::isfinite(upper);
    const double x0 = bounded && !(s.theta < upper) ? 0.5 * upper : s.theta;
    const bool reflect = cfg.boundary == BoundaryPolicy::Reflect;

    Ensemble ens;
    ens.spec = spec;
    ens.config = cfg;
    ens.samples.reserve(cfg.paths * cfg.samples_per_path);

    for (std::size_t path = 0; path < cfg.paths; ++path) {
        auto rng = make_stream(cfg.seed, path);
        std::normal_distribution<double> normal(0.0, 1.0);
        double x = x0;
        auto step = [&] {
            const double var = std::max(0.0, variance(s, x));
            double nx = x + drift_of(s, x) * dt + std::sqrt(var) * sqdt * normal(rng);
            if (!std::isfinite(nx)) {
                throw NumericError("Euler-Maruyama step diverged at path " + std::to_string(path) +
                                       "; reduce dt",
                                   x);
            }
            if (nx <= 0.0 || (bounded && nx >= upper)) {
                ++ens.boundary_hits;
                const double edge = nx <= 0.0 ? 0.0 : upper;
                if (reflect) {
                    if (nx <= 0.0) nx = -nx;
                    if (bounded && nx >= upper) nx = 2.0 * upper - nx;
                }
                if (!reflect || !(nx > 0.0) || (bounded && !(nx < upper))) nx = 0.5 * (x + edge);
            }
            x = nx;
        };
        for (std::size_t i = 0; i < burn_steps; ++i) step();
        for (std::size_t k = 0; k < cfg.samples_per_path; ++k) {
            for (std::size_t i = 0; i < thin_steps; ++i) step();
            ens.samples.push_back(x);
        }
        ens.steps += burn_steps + cfg.samples_per_path * thin_steps;
    }
    ens.effective_count = ens.samples.size();
    return ens;
}

std::vector<SweepPoint> hierarchy_sweep(const SdeSpec& base, const SweepKnob& knob,
                                        const IntegrationConfig& config) {
    validate(base);
    std::vector<SdeSpec> points;
    switch (knob.kind) {
        case SweepKnob::Kind::Kappa1ToZero: {
            require(base.model == SdeModel::mB && base.kappa_form,
                    "kappa1 -> 0 sweep needs the mB kappa form");
            SdeSpec s = base;
            s.kappa1 = 0.0;
            points.push_back(s);
            break;
        }
        case SweepKnob::Kind::Kappa2ToZero: {
            require((base.model == SdeModel::mB && base.kappa_form) || base.model == SdeModel::B2 ||
                        base.model == SdeModel::GB2,
                    "kappa2 -> 0 sweep needs the mB kappa form, B2 or GB2");
            SdeSpec s = base;
            s.kappa2 = 0.0;
            points.push_back(s);
            break;
        }
        case SweepKnob::Kind::KappaToZero: {
            require(base.model == SdeModel::B2 || base.model == SdeModel::GB2,
                    "kappa -> 0 sweep needs B2 or GB2");
            SdeSpec s = base;
            s.kappa = 0.0;
            points.push_back(s);
            break;
        }
        case SweepKnob::Kind::CGrid: {
            require(base.model == SdeModel::B2B1Mix, "c sweep needs the B2B1Mix model");
            require(!knob.c_grid.empty(), "c sweep needs a nonempty grid");
            for (double c : knob.c_grid) {
                SdeSpec s = base;
                s.c = c;
                points.push_back(s);
            }
            break;
        }
    }
    std::vector<SweepPoint> out;
    for (const auto& s : points) {
        DistSpec target = param_map(s);
        const Ensemble ens = integrate(s, config);
        const double ks = ks_statistic(ens.samples, target);
        out.push_back({s, std::move(target), ks, ens.effective_count});
    }
    return out;
}

std::string to_json(const SdeSpec& s) {
    nlohmann::json j;
    j["model"] = std::string(to_string(s.model));
    j["gamma"] = s.gamma;
    j["theta"] = s.theta;
    switch (s.model) {
        case SdeModel::B2:
            j["kappa"] = s.kappa;
            j["kappa2"] = s.kappa2;
            break;
        case SdeModel::GB2:
            j["alpha"] = s.alpha;
            j["kappa"] = s.kappa;
            j["kappa2"] = s.kappa2;
            break;
        case SdeModel::mB:
            if (s.kappa_form) {
                j["kappa"] = s.kappa;
                j["kappa1"] = s.kappa1;
                j["kappa2"] = s.kappa2;
            } else {
                if (std::isfinite(s.beta1)) j["beta1"] = s.beta1;
                if (std::isfinite(s.beta2)) j["beta2"] = s.beta2;
            }
            break;
        case SdeModel::tildeMGB:
            j["alpha"] = s.alpha;
            j["beta1"] = s.beta1;
            j["beta2"] = s.beta2;
            break;
        case SdeModel::B2B1Mix:
            j["kappa"] = s.kappa;
            j["kappa_tilde"] = s.kappa_tilde;
            j["c"] = s.c;
            break;
    }
    return j.dump();
}

SdeSpec sde_spec_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("malformed SDE JSON: ") + e.what());
    }
    require(j.is_object() && j.contains("model") && j["model"].is_string(),
            "SDE JSON must be an object with a string 'model'");
    SdeSpec s;
    s.model = sde_model_from_string(j["model"].get<std::string>());
    const std::array<std::pair<const char*, double*>, 10> slots{{
        {"gamma", &s.gamma},
        {"theta", &s.theta},
        {"kappa", &s.kappa},
        {"kappa1", &s.kappa1},
        {"kappa2", &s.kappa2},
        {"kappa_tilde", &s.kappa_tilde},
        {"alpha", &s.alpha},
        {"c", &s.c},
        {"beta1", &s.beta1},
        {"beta2", &s.beta2},
    }};
    for (const auto& [key, value] : j.items()) {
        if (key == "model") continue;
        auto it = std::find_if(slots.begin(), slots.end(),
                               [&](const auto& sl) { return key == sl.first; });
        require(it != slots.end(), "unknown SDE field '" + key + "'");
        require(value.is_number(), "SDE field '" + key + "' must be numeric");
        *it->second = value.get<double>();
    }
    require(j.contains("gamma") && j.contains("theta"), "SDE JSON needs gamma and theta");
    if (s.model == SdeModel::mB) {
        const bool has_kappa = j.contains("kappa") || j.contains("kappa1") || j.contains("kappa2");
        const bool has_beta = j.contains("beta1") || j.contains("beta2");
        require(!(has_kappa && has_beta), "mB takes either kappa amplitudes or beta1/beta2, not both");
        s.kappa_form = has_kappa;
    }
    validate(s);
    return s;
}

std::string ensemble_sidecar_json(const Ensemble& e) {
    nlohmann::json cfg;
    cfg["dt"] = e.config.dt.value_or(0.0);
    cfg["burn_in"] = e.config.burn_in.value_or(0.0);
    cfg["thin"] = e.config.thin.value_or(0.0);
    cfg["paths"] = e.config.paths;
    cfg["samples_per_path"] = e.config.samples_per_path;
    cfg["boundary_policy"] = e.config.boundary == BoundaryPolicy::Reflect ? "reflect" : "clamp";
    nlohmann::json j;
    j["sde"] = nlohmann::json::parse(to_json(e.spec));
    j["config"] = cfg;
    j["seed"] = e.config.seed;
    j["effective_count"] = e.effective_count;
    j["boundary_hits"] = e.boundary_hits;
    j["steps"] = e.steps;
    return j.dump(2);
}

}  // namespace gbfam
