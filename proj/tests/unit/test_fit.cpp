#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gbfam/distributions.hpp"
#include "gbfam/errors.hpp"
#include "gbfam/fit.hpp"

using namespace gbfam;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> quantile_grid(const DistSpec& s, std::size_t n) {
    const Distribution d(s);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d.quantile((i + 0.5) / static_cast<double>(n));
    return out;
}

void expect_close(const DistSpec& got, const DistSpec& want, double tol) {
    const auto a = got.fields();
    const auto b = want.fields();
    auto check = [&](const std::optional<double>& x, const std::optional<double>& y, const char* name) {
        ASSERT_EQ(x.has_value(), y.has_value()) << name;
        if (x) {
            EXPECT_LT(rel(*x, *y), tol) << name << " got " << *x << " want " << *y;
        }
    };
    check(a.alpha, b.alpha, "alpha");
    check(a.beta1, b.beta1, "beta1");
    check(a.beta2, b.beta2, "beta2");
    check(a.p, b.p, "p");
    check(a.q, b.q, "q");
}

}  // namespace

TEST(Ks, QuantileGridGivesHalfStep) {
    const auto s = DistSpec::gb({1.5457, 398.816, 27.4217, 0.6648, 2.7871});
    for (std::size_t n : {10u, 100u, 1000u}) {
        EXPECT_NEAR(ks_statistic(quantile_grid(s, n), s), 0.5 / n, 1e-9) << n;
    }
}

TEST(Ks, OrderInvariantAndBounded) {
    const auto s = DistSpec::gga({1.3, 2.0, 1.7});
    auto v = sample(s, 500, 1);
    const double a = ks_statistic(v, s);
    std::reverse(v.begin(), v.end());
    EXPECT_EQ(ks_statistic(v, s), a);
    EXPECT_GE(a, 0.0);
    // Every sample lies above the support of a tiny-scale member.
    const auto tiny = DistSpec::gb({1.0, 1e-6, 1e-7, 1.0, 1.0});
    EXPECT_GT(ks_statistic(v, tiny), 0.99);
    EXPECT_THROW(ks_statistic({}, s), DomainError);
}

TEST(Ks, LargeSampleBelowThreshold) {
    const auto s = DistSpec::mgb({1.55, 399.9009, 27.4233, 0.6519, 1.7828});
    EXPECT_LT(ks_statistic(sample(s, 100000, 8), s), ks_threshold(100000));
}

TEST(Ks, Thresholds) {
    EXPECT_NEAR(ks_threshold(100000, 0.05), 0.004294, 5e-7);
    EXPECT_NEAR(ks_threshold(10000, 0.01), 0.01628, 1e-12);
    EXPECT_NEAR(ks_threshold(13020, 0.05), 0.0119, 5e-5);
    EXPECT_NEAR(ks_threshold(10000, 0.1), std::sqrt(-0.5 * std::log(0.05)) / 100.0, 1e-12);
    EXPECT_THROW(ks_threshold(34), DomainError);
    EXPECT_THROW(ks_threshold(100, 0.0), DomainError);
}

TEST(Mle, RecoversGeneralizedGamma) {
    const auto truth = DistSpec::gga({1.8, 3.0, 1.4});
    const auto r = fit_mle(sample(truth, 5000, 2), Family::GGa);
    EXPECT_TRUE(r.converged);
    expect_close(r.spec, truth, 0.1);
    EXPECT_LT(r.ks, r.ks_threshold);
    EXPECT_NEAR(r.ks_threshold, 1.358 / std::sqrt(5000.0), 1e-12);
}

TEST(Mle, RecoversBetaPrime) {
    const auto truth = DistSpec::b2({2.0, 3.0, 2.5});
    const auto r = fit_mle(sample(truth, 5000, 3), Family::B2);
    EXPECT_TRUE(r.converged);
    expect_close(r.spec, truth, 0.15);
}

TEST(Mle, StartAtTruthDoesNotGetWorse) {
    const auto truth = DistSpec::gb({1.5457, 398.816, 27.4217, 0.6648, 2.7871});
    const auto v = sample(truth, 3000, 4);
    const auto r = fit_mle(v, Family::GB, truth);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.neg_log_likelihood, neg_log_likelihood(v, truth) + 1e-9);
    EXPECT_GT(*r.spec.fields().beta1, *std::max_element(v.begin(), v.end()));
}

TEST(Mle, NestedLimitPushesBeta1Out) {
    const auto truth = DistSpec::gga({2.0, 5.0, 1.5});
    const auto v = sample(truth, 2000, 6);
    const auto direct = fit_mle(v, Family::GGa);
    const auto nested = fit_mle(v, Family::GB1);
    const double mx = *std::max_element(v.begin(), v.end());
    EXPECT_GT(*nested.spec.fields().beta1, 2.0 * mx);
    EXPECT_LT(nested.ks, direct.ks + 0.01);
}

TEST(Mle, RefusesBadInput) {
    EXPECT_THROW(fit_mle(std::vector<double>(20, 1.0), Family::GGa), DomainError);
    EXPECT_THROW(fit_mle(std::vector<double>(50, 1.0), Family::GGa), DomainError);
    std::vector<double> v = sample(DistSpec::gga({1.0, 1.0, 1.0}), 50, 1);
    v[3] = -1.0;
    EXPECT_THROW(fit_mle(v, Family::GGa), DomainError);
    v[3] = std::nan("");
    EXPECT_THROW(fit_cdf_lsq(v, Family::GGa), DomainError);
}

TEST(Mle, NonConvergenceIsReported) {
    FitOptions o;
    o.max_iterations = 1;
    const auto r = fit_mle(sample(DistSpec::gga({1.8, 3.0, 1.4}), 500, 2), Family::GGa, std::nullopt, o);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 1);
}

TEST(CdfLsq, PerfectGridRecovers) {
    const auto truth = DistSpec::gb1({1.7, 10.0, 1.3, 2.2});
    const auto start = DistSpec::gb1({1.5, 12.0, 1.0, 2.0});
    const auto r = fit_cdf_lsq(quantile_grid(truth, 1000), Family::GB1, start);
    EXPECT_TRUE(r.converged);
    expect_close(r.spec, truth, 0.01);
}

TEST(CdfLsq, AgreesWithMleOnLargeSample) {
    const auto truth = DistSpec::gga({1.8, 3.0, 1.4});
    const auto v = sample(truth, 5000, 12);
    const auto a = fit_mle(v, Family::GGa);
    const auto b = fit_cdf_lsq(v, Family::GGa, a.spec);
    expect_close(b.spec, a.spec, 0.1);
}

TEST(Bootstrap, RefusesTooFewReplicas) {
    const auto s = DistSpec::gga({1.8, 3.0, 1.4});
    EXPECT_THROW(bootstrap_ci(s, 200, 1, 0.95, {1.0, 2.0}, 0), DomainError);
    EXPECT_THROW(bootstrap_ci(s, 10, 100, 0.95, {1.0, 2.0}, 0), DomainError);
}

TEST(Bootstrap, BandCoversTruthAndNarrowsWithN) {
    const auto s = DistSpec::gga({1.8, 3.0, 1.4});
    const Distribution d(s);
    std::vector<double> grid;
    for (double u : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95, 0.99}) grid.push_back(d.quantile(u));
    const auto small = bootstrap_ci(s, 200, 100, 0.95, grid, 21);
    const auto large = bootstrap_ci(s, 2000, 100, 0.95, grid, 21);
    ASSERT_EQ(small.lower.size(), grid.size());
    EXPECT_EQ(small.replicas_used + small.replicas_dropped, 100u);
    int inside = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_LE(0.0, small.lower[i]);
        EXPECT_LE(small.lower[i], small.upper[i]);
        EXPECT_LE(small.upper[i], 1.0);
        const double truth = d.ccdf(grid[i]);
        inside += small.lower[i] <= truth && truth <= small.upper[i];
    }
    EXPECT_GE(inside, static_cast<int>(0.9 * grid.size()));
    const std::size_t mid = 3;
    EXPECT_LT(large.upper[mid] - large.lower[mid], small.upper[mid] - small.lower[mid]);
    const auto again = bootstrap_ci(s, 200, 100, 0.95, grid, 21);
    EXPECT_EQ(again.lower, small.lower);
}

TEST(Serialize, FitResultAndBand) {
    const auto r = fit_mle(sample(DistSpec::gga({1.8, 3.0, 1.4}), 500, 2), Family::GGa);
    const std::string j = to_json(r);
    for (const char* key : {"\"family\"", "\"ks\"", "\"ks_threshold\"", "\"converged\"", "\"iterations\""}) {
        EXPECT_NE(j.find(key), std::string::npos) << key;
    }
    CiBand b{{1.0, 2.0}, {0.1, 0.2}, {0.3, 0.4}, 0.95, 100, 0};
    const std::string t = to_tsv(b);
    EXPECT_EQ(t.substr(0, t.find('\n')), "x\tlower\tupper");
    EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 3);
}
