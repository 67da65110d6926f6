#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbfam/dist_spec.hpp"

namespace gbfam {

/// Two-sided KS distance between the empirical CDF of `samples` and the
/// member's cdf. Order of the input does not matter.
double ks_statistic(std::vector<double> samples, const DistSpec& spec);

/// c(level)/sqrt(n), c(0.05) = 1.358, c(0.01) = 1.628, otherwise
/// sqrt(-ln(level/2)/2). Requires n >= 35 and level in (0, 1).
double ks_threshold(std::size_t n, double alpha_level = 0.05);

struct FitOptions {
    int max_iterations = 500;
    double fd_step = 1e-5;          ///< central-difference step in log-parameter space
    double grad_tol = 1e-6;
    double rel_tol = 1e-10;
    double ks_alpha_level = 0.05;
};

struct FitResult {
    DistSpec spec;
    double ks;
    double ks_threshold;
    double neg_log_likelihood;  ///< summed over the sample
    bool converged;
    int iterations;
};

/// Maximum likelihood over log-parameters (beta1 = max * (1 + softplus(eta))).
/// Non-convergence is reported through `converged`, never thrown.
/// Throws DomainError for fewer than 35 samples, nonpositive or nonfinite
/// samples, or an all-equal sample.
FitResult fit_mle(const std::vector<double>& samples, Family family,
                  const std::optional<DistSpec>& init = std::nullopt, const FitOptions& options = {});

/// Least squares between the plotting-position empirical CDF (i - 1/2)/n and
/// the model cdf on the sorted sample. Same contract as fit_mle.
FitResult fit_cdf_lsq(const std::vector<double>& samples, Family family,
                      const std::optional<DistSpec>& init = std::nullopt,
                      const FitOptions& options = {});

/// Summed negative log-likelihood; +infinity if any sample has zero density.
double neg_log_likelihood(const std::vector<double>& samples, const DistSpec& spec);

/// Default starting point: alpha = 2, p = q = 1, beta2 = median,
/// beta1 = 1.5 max (GGa/GIGa scale = median).
DistSpec default_init(const std::vector<double>& samples, Family family);

struct CiBand {
    std::vector<double> grid;
    std::vector<double> lower;
    std::vector<double> upper;
    double level;
    std::size_t replicas_used;
    std::size_t replicas_dropped;
};

/// Parametric bootstrap band for the ccdf: `replicas` samples of size n are
/// drawn from spec with per-replica seeds, refit by maximum likelihood, and
/// the pointwise envelopes at (1 - level)/2 and (1 + level)/2 are returned.
/// Non-converged replicas are dropped; more than 20% dropped is a
/// NumericError. Requires replicas >= 100.
CiBand bootstrap_ci(const DistSpec& spec, std::size_t n, std::size_t replicas, double level,
                    const std::vector<double>& grid, std::uint64_t seed);

/// {family, params{...}, ks, ks_threshold, nll, converged, iterations}
std::string to_json(const FitResult& result);

/// Tab-separated x, lower, upper with a header line.
std::string to_tsv(const CiBand& band);

}  // namespace gbfam
