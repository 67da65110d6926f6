#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gbfam/dist_spec.hpp"

namespace gbfam {

/// Mean-reverting SDE models with generalized-beta steady states.
enum class SdeModel {
    B2,        ///< dy = -g(y - th) dt + sqrt(k^2 y + k2^2 y^2) dW
    GB2,       ///< dx = -g(x - th x^{1-a}) dt + sqrt(k^2 x^{2-a} + k2^2 x^2) dW
    mB,        ///< dx = -g(x - th) dt + sqrt(x (1 - x/b1)(1 + x/b2)) dW, or the kappa form
    tildeMGB,  ///< dx = -g(x - th x^{1-a}) dt + sqrt(x^{2-a}(1 - (x/b1)^a)(1 + (x/b2)^a)) dW
    B2B1Mix,   ///< dx = -g(x - th) dt + sqrt(k^2 x + (2c - 1) kt^2 x^2) dW
};

std::string_view to_string(SdeModel model);
SdeModel sde_model_from_string(std::string_view name);

/// Physical parameters. Fields a model does not use are ignored (see
/// ignored_fields). For mB, kappa_form selects the amplitude form
/// sqrt(k^2 x (1 - k1^2 x/k^2)(1 + k2^2 x/k^2)); otherwise beta1/beta2 are
/// used directly and may be +infinity.
struct SdeSpec {
    SdeModel model = SdeModel::mB;
    double gamma = 1.0;
    double theta = 1.0;
    double kappa = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa_tilde = 0.0;
    double alpha = 1.0;
    double c = 0.0;
    double beta1 = std::numeric_limits<double>::infinity();
    double beta2 = std::numeric_limits<double>::infinity();
    bool kappa_form = false;
};

/// Throws DomainError on gamma/theta <= 0, negative amplitudes, c outside
/// [0, 1], nonpositive alpha or betas.
void validate(const SdeSpec& spec);

/// Names of fields that are set (nonzero / finite) but unused by the model.
std::vector<std::string> ignored_fields(const SdeSpec& spec);

/// The mB kappa form rewritten with beta_{1,2} = k^2/k_{1,2}^2 and time
/// measured in units of 1/k^2 (gamma -> gamma/k^2). k = k1 = 0 becomes the
/// B2 model. Other specs are returned unchanged.
SdeSpec canonical(const SdeSpec& spec);

struct DriftDiffusion {
    double drift;
    double diffusion;  ///< sigma(x), not sigma^2
};

/// Coefficients as written for the model (physical time units).
/// x must lie in the closed support.
DriftDiffusion drift_diffusion(const SdeSpec& spec, double x);

/// Upper support bound of the process (infinity when unbounded).
double support_upper(const SdeSpec& spec);

/// Steady-state member. Throws DomainError naming the violated inequality
/// when an implied shape is not positive or there is no noise.
DistSpec param_map(const SdeSpec& spec);

/// Reflect mirrors an exiting step back into the support. Clamp stops it
/// halfway between the current state and the crossed boundary, which keeps
/// coefficients like x^{1-alpha} finite.
enum class BoundaryPolicy { Reflect, Clamp };

/// Unset time settings default to dt = 1e-3/g, burn_in = 20/g, thin = 1/g
/// with g the canonical gamma.
struct IntegrationConfig {
    std::optional<double> dt;
    std::optional<double> burn_in;
    std::optional<double> thin;
    std::size_t paths = 100;
    std::size_t samples_per_path = 1000;
    std::uint64_t seed = 0;
    BoundaryPolicy boundary = BoundaryPolicy::Reflect;
};

/// Fills unset time settings for a spec.
IntegrationConfig resolved(const SdeSpec& spec, const IntegrationConfig& config);

struct Ensemble {
    std::vector<double> samples;  ///< path-major order
    std::size_t effective_count = 0;
    SdeSpec spec;
    IntegrationConfig config;  ///< resolved
    std::size_t steps = 0;
    std::size_t boundary_hits = 0;
};

/// Euler-Maruyama ensemble. Path i uses stream (seed, i), so the output does
/// not depend on evaluation order. Refuses specs without a normalizable
/// steady state unless the diffusion vanishes identically.
Ensemble integrate(const SdeSpec& spec, const IntegrationConfig& config);

struct SweepKnob {
    enum class Kind { Kappa1ToZero, Kappa2ToZero, KappaToZero, CGrid };
    Kind kind;
    std::vector<double> c_grid;
};

struct SweepPoint {
    SdeSpec spec;
    DistSpec target;
    double ks;
    std::size_t effective_count;
};

std::vector<SweepPoint> hierarchy_sweep(const SdeSpec& base, const SweepKnob& knob,
                                        const IntegrationConfig& config);

std::string to_json(const SdeSpec& spec);
SdeSpec sde_spec_from_json(std::string_view text);

/// Sidecar {sde, config, seed, effective_count}.
std::string ensemble_sidecar_json(const Ensemble& ensemble);

}  // namespace gbfam
