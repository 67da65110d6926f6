#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gbfam/dist_spec.hpp"

namespace gbfam {

/// Evaluator for one family member. Normalizing constants are computed once
/// at construction; the object is immutable afterwards and safe to share
/// between threads.
///
/// Endpoint convention: where the density diverges (x = 0 with alpha*p < 1,
/// x = beta1 with q < 1) pdf returns +infinity. Outside the support pdf is 0
/// and cdf/ccdf saturate.
class Distribution {
public:
    explicit Distribution(DistSpec spec);

    const DistSpec& spec() const noexcept { return spec_; }
    Family family() const noexcept { return spec_.family(); }
    double support_upper() const noexcept { return upper_; }

    double pdf(double x) const;
    double log_pdf(double x) const;
    double cdf(double x) const;

    /// Evaluated from the complementary closed forms rather than 1 - cdf,
    /// so it keeps relative precision deep in the tail.
    double ccdf(double x) const;

    /// x with |cdf(x) - u| <= 1e-10.
    double quantile(double u) const;

    /// Inverse-CDF draws; identical output for identical seed.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

private:
    enum class Kernel { Beta, ModifiedBeta, Tilde, BetaPrime, Gamma, InverseGamma };

    struct Point;
    Point at(double x) const;
    double quantile_beta(double u) const;
    double quantile_beta_prime(double u) const;
    double quantile_search(double u) const;
    double tilde_cdf_lower(const Point& pt) const;
    double tilde_ccdf_upper(const Point& pt) const;

    DistSpec spec_;
    Kernel kernel_;
    double alpha_ = 1.0;
    double beta1_;               // upper support bound (inf when unbounded)
    double beta2_;               // second scale (inf when absent)
    double p_ = 1.0;
    double q_ = 1.0;             // effective q (modified B2 forms carry q+1)
    double upper_;
    double ln_ratio_ = 0.0;      // alpha * ln(beta1/beta2)
    double log1p_r_ = 0.0;       // ln(1 + (beta1/beta2)^alpha)
    double log_norm_ = 0.0;      // log of the constant factor of the pdf
    double ln_beta_pq_ = 0.0;    // ln B(p, q)
    double mod_coef_ = 0.0;      // second-term coefficient of the modified CDF
    double tilde_log_norm_ = 0.0;
};

// Free-function surface over DistSpec. Each call builds a Distribution;
// hold a Distribution directly when evaluating repeatedly.

double pdf(const DistSpec& spec, double x);
double cdf(const DistSpec& spec, double x);
double ccdf(const DistSpec& spec, double x);
double quantile(const DistSpec& spec, double u);
std::vector<double> sample(const DistSpec& spec, std::size_t count, std::uint64_t seed);

/// GB density written through the seed CDF (generator form). GB tag only.
double pdf_alt(const DistSpec& spec, double x);

/// Seed CDF ((x/b1)^a + (x/b2)^a) / (1 + (x/b2)^a) on [0, beta1].
double seed_cdf(double alpha, double beta1, double beta2, double x);

/// Derivative of seed_cdf in x.
double seed_pdf(double alpha, double beta1, double beta2, double x);

/// Beta-generator density F^{p-1} f (1-F)^{q-1} / B(p, q).
double generator_pdf(double seed_F, double seed_f, double p, double q);

/// Power change of variable y = x^alpha: lifts B -> GB and mB -> mGB with
/// scales beta_i -> beta_i^{1/alpha}.
DistSpec power_change_of_variable(const DistSpec& alpha_one_member, double alpha);

/// Limit member reached along the family hierarchy. Scales sent to infinity
/// are dropped; limits that send a shape to infinity (GGa, GIGa) keep the
/// scale that stays finite along the limit path.
DistSpec hierarchy_limit(const DistSpec& spec, Family target);

struct TailExponents {
    double ccdf_slope;
    double pdf_slope;
};

/// Mid-range log-log slopes for beta2 << x << beta1. Requires beta2 < beta1/10
/// for bounded members.
TailExponents tail_exponent(const DistSpec& spec);

enum class NearBeta1Variant { GB, mGB };

/// Leading asymptote of the ccdf as x -> beta1 for a GB or mGB record.
/// x must lie within window * beta1 of beta1.
double ccdf_near_beta1(const DistSpec& spec, double x, NearBeta1Variant variant,
                       double window = 0.01);

}  // namespace gbfam
