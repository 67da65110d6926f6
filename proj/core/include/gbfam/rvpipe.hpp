#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace gbfam {

/// Daily reference prices with ISO-8601 dates, strictly increasing.
struct PriceSeries {
    std::vector<std::string> dates;
    std::vector<double> closes;
};

/// Two comma-separated columns, date and close; header optional, blank lines
/// skipped. Malformed rows throw DomainError listing their line numbers.
PriceSeries read_price_csv(std::istream& in);
PriceSeries read_price_csv_file(const std::string& path);

/// ln(S_i / S_{i-1}).
std::vector<double> log_returns(const std::vector<double>& closes);
std::vector<double> log_returns(const PriceSeries& series);

struct RvConfig {
    double scale = 100.0;
    double annualization = 252.0;
    std::size_t stride = 1;  ///< window step; 1 gives overlapping windows
};

/// Annualized realized volatility per window. Zero values are kept here;
/// zero_count records how many there are.
struct RvDataset {
    std::size_t n = 0;
    std::vector<double> values;
    std::size_t count = 0;
    std::size_t zero_count = 0;
};

/// RV = scale * sqrt(annualization/n * sum of r^2 over the window).
RvDataset realized_volatility(const std::vector<double>& returns, std::size_t n,
                              const RvConfig& config = {});

/// The strictly positive values, the ones usable for fitting.
std::vector<double> positive_values(const RvDataset& dataset);

struct CcdfPoint {
    double x;
    double ccdf;
};

/// Sorted unique values with ccdf = (count - #{v <= x})/count, except the
/// last point, which carries 1/count.
std::vector<CcdfPoint> empirical_ccdf(const RvDataset& dataset);

inline const std::vector<std::size_t> kDefaultWindows{1, 2, 3, 5, 7, 9, 13, 17, 21};

std::vector<RvDataset> build_all(const PriceSeries& series,
                                 const std::vector<std::size_t>& n_list = kDefaultWindows,
                                 const RvConfig& config = {});

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Sidecar {n, count, source_digest}.
std::string rv_sidecar_json(const RvDataset& dataset, const std::string& source_digest);

}  // namespace gbfam
