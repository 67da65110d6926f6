#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "gbfam/errors.hpp"
#include "gbfam/rvpipe.hpp"

using namespace gbfam;

namespace {

std::vector<double> random_returns(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::student_t_distribution<double> t(3.0);
    std::vector<double> r(n);
    for (auto& x : r) x = 0.01 * t(rng);
    return r;
}

std::vector<double> prices_from(const std::vector<double>& r, double s0) {
    std::vector<double> s{s0};
    for (double x : r) s.push_back(s.back() * std::exp(x));
    return s;
}

}  // namespace

TEST(LogReturns, Examples) {
    EXPECT_EQ(log_returns(std::vector<double>{5.0, 5.0, 5.0}), (std::vector<double>{0.0, 0.0}));
    const auto r = log_returns(std::vector<double>{100.0, 100.0 * std::exp(0.01)});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0], 0.01, 1e-15);
    EXPECT_THROW(log_returns(std::vector<double>{1.0}), DomainError);
    EXPECT_THROW(log_returns(std::vector<double>{1.0, 0.0}), DomainError);
    EXPECT_THROW(log_returns(std::vector<double>{1.0, -2.0}), DomainError);
}

TEST(LogReturns, RebuildPrices) {
    const auto r = random_returns(2000, 1);
    const auto s = prices_from(r, 1234.5);
    const auto back = log_returns(s);
    double acc = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
        acc += back[i];
        const double rebuilt = 1234.5 * std::exp(acc);
        EXPECT_NEAR(rebuilt / s[i + 1], 1.0, 1e-12);
    }
}

TEST(Rv, DirectFormula) {
    const auto one = realized_volatility({0.01}, 1);
    ASSERT_EQ(one.count, 1u);
    EXPECT_NEAR(one.values[0], 100.0 * std::sqrt(252.0) * 0.01, 1e-12);
    const auto two = realized_volatility({0.01, -0.01}, 2);
    EXPECT_NEAR(two.values[0], 100.0 * std::sqrt(0.0252), 1e-12);
    EXPECT_NEAR(two.values[0], 15.8745, 1e-4);
    EXPECT_THROW(realized_volatility({0.01}, 2), DomainError);
    EXPECT_THROW(realized_volatility({0.01}, 0), DomainError);
}

TEST(Rv, ZerosCountedAndExcluded) {
    const auto ds = realized_volatility({0.0, 0.0, 0.01, 0.0}, 1);
    EXPECT_EQ(ds.zero_count, 3u);
    EXPECT_EQ(ds.count, 4u);
    EXPECT_EQ(positive_values(ds).size(), 1u);
    const auto all_zero = realized_volatility(std::vector<double>(10, 0.0), 3);
    for (double v : all_zero.values) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(all_zero.zero_count, all_zero.count);
}

TEST(Rv, CountsAndStride) {
    const auto r = random_returns(100, 2);
    for (std::size_t n : {1u, 2u, 5u, 21u}) EXPECT_EQ(realized_volatility(r, n).count, 100 - n + 1);
    RvConfig cfg;
    cfg.stride = 5;
    EXPECT_EQ(realized_volatility(r, 5, cfg).count, 20u);
}

TEST(Rv, PriceScalingLeavesValuesUnchanged) {
    // Powers of two keep every ratio exact.
    const auto s = prices_from(random_returns(300, 3), 100.0);
    std::vector<double> scaled = s;
    for (auto& x : scaled) x *= 8.0;
    for (std::size_t n : {1u, 5u, 21u}) {
        EXPECT_EQ(realized_volatility(log_returns(s), n).values,
                  realized_volatility(log_returns(scaled), n).values);
    }
    std::vector<double> scaled3 = s;
    for (auto& x : scaled3) x *= 3.7;
    const auto a = realized_volatility(log_returns(s), 5).values;
    const auto b = realized_volatility(log_returns(scaled3), 5).values;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i] / b[i], 1.0, 1e-12);
}

TEST(Rv, WindowIsMeanOfDailySquares) {
    const auto r = random_returns(500, 4);
    const auto daily = realized_volatility(r, 1).values;
    for (std::size_t k : {2u, 3u, 7u, 21u}) {
        const auto win = realized_volatility(r, k).values;
        for (std::size_t j = 0; j < win.size(); ++j) {
            double m = 0.0;
            for (std::size_t i = j; i < j + k; ++i) m += daily[i] * daily[i];
            m /= static_cast<double>(k);
            EXPECT_NEAR(win[j] * win[j] / m, 1.0, 1e-9);
        }
        // Non-overlapping windows tile the series, so the global averages agree.
        RvConfig cfg;
        cfg.stride = k;
        const auto tiles = realized_volatility(r, k, cfg).values;
        double a = 0.0, b = 0.0;
        for (double v : tiles) a += v * v;
        for (std::size_t i = 0; i < tiles.size() * k; ++i) b += daily[i] * daily[i];
        EXPECT_NEAR(a / tiles.size(), b / (tiles.size() * k), 1e-9 * a / tiles.size());
    }
}

TEST(Rv, PlainRootMeanSquare) {
    const auto r = random_returns(50, 5);
    RvConfig cfg;
    cfg.scale = 1.0;
    cfg.annualization = 1.0;
    const auto ds = realized_volatility(r, 10, cfg);
    const double ms = std::inner_product(r.begin(), r.begin() + 10, r.begin(), 0.0) / 10.0;
    EXPECT_NEAR(ds.values[0], std::sqrt(ms), 1e-15);
}

TEST(Ccdf, RankConvention) {
    RvDataset ds;
    ds.values = {3.0, 1.0, 4.0, 2.0};
    ds.count = 4;
    const auto c = empirical_ccdf(ds);
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c[1].x, 2.0);
    EXPECT_DOUBLE_EQ(c[1].ccdf, 0.5);
    EXPECT_DOUBLE_EQ(c.back().ccdf, 0.25);
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LE(c[i].ccdf, c[i - 1].ccdf);

    RvDataset single;
    single.values = {7.0};
    single.count = 1;
    const auto s = empirical_ccdf(single);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].ccdf, 1.0);

    RvDataset ties;
    ties.values = {1.0, 1.0, 2.0, 3.0};
    ties.count = 4;
    const auto t = empirical_ccdf(ties);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_DOUBLE_EQ(t[0].ccdf, 0.5);
}

TEST(BuildAll, DefaultWindows) {
    const auto s = prices_from(random_returns(400, 6), 50.0);
    PriceSeries series;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", 2000 + static_cast<int>(i) / 300,
                      static_cast<int>(i) % 300 / 25 + 1, static_cast<int>(i) % 25 + 1);
        series.dates.emplace_back(buf);
        series.closes.push_back(s[i]);
    }
    const auto all = build_all(series, {kDefaultWindows.begin(), kDefaultWindows.end()});
    ASSERT_EQ(all.size(), 9u);
    for (std::size_t k = 0; k < all.size(); ++k) {
        EXPECT_EQ(all[k].n, kDefaultWindows[k]);
        EXPECT_EQ(all[k].count, 400 - kDefaultWindows[k] + 1);
    }
    const auto one = build_all(series, {5});
    EXPECT_EQ(one[0].values, realized_volatility(log_returns(series), 5).values);
    EXPECT_THROW(build_all(series, {}), DomainError);
}

TEST(Csv, ParsesWithAndWithoutHeader) {
    std::istringstream with("date,close\n2020-01-02,100.5\n\n2020-01-03,101\n");
    const auto a = read_price_csv(with);
    EXPECT_EQ(a.dates, (std::vector<std::string>{"2020-01-02", "2020-01-03"}));
    EXPECT_EQ(a.closes, (std::vector<double>{100.5, 101.0}));
    std::istringstream without("2020-01-02,100.5\r\n2020-01-03,101\r\n");
    EXPECT_EQ(read_price_csv(without).closes, a.closes);
}

TEST(Csv, RejectsBadRowsWithLineNumbers) {
    std::istringstream bad("date,close\n2020-01-02,100\n2020-01-03,abc\n2020-02-30,5\n2020-01-05,-1\n");
    try {
        read_price_csv(bad);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find(" 3"), std::string::npos) << msg;
        EXPECT_NE(msg.find(" 4"), std::string::npos) << msg;
        EXPECT_NE(msg.find(" 5"), std::string::npos) << msg;
    }
    std::istringstream order("2020-01-03,1\n2020-01-02,2\n");
    EXPECT_THROW(read_price_csv(order), DomainError);
    std::istringstream one("2020-01-03,1\n");
    EXPECT_THROW(read_price_csv(one), DomainError);
    EXPECT_THROW(read_price_csv_file("/nonexistent/prices.csv"), DomainError);
}

TEST(Digest, Sha256KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Digest, SidecarFields) {
    const auto ds = realized_volatility({0.01, 0.0, 0.02}, 1);
    const std::string j = rv_sidecar_json(ds, "abc");
    EXPECT_NE(j.find("\"n\": 1"), std::string::npos);
    EXPECT_NE(j.find("\"count\": 3"), std::string::npos);
    EXPECT_NE(j.find("\"zero_count\": 1"), std::string::npos);
    EXPECT_NE(j.find("\"source_digest\": \"abc\""), std::string::npos);
}
