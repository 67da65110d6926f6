#include "gbfam/rvpipe.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gbfam/errors.hpp"
#include "json.hpp"

namespace gbfam {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::from_chars(s.data(), s.data() + 4, y).ec != std::errc{}) return false;
    if (std::from_chars(s.data() + 5, s.data() + 7, m).ec != std::errc{}) return false;
    if (std::from_chars(s.data() + 8, s.data() + 10, d).ec != std::errc{}) return false;
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}.ok();
}

}  // namespace

PriceSeries read_price_csv(std::istream& in) {
    PriceSeries out;
    std::vector<std::size_t> bad;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        const bool two_fields = comma != std::string_view::npos &&
                                row.find(',', comma + 1) == std::string_view::npos;
        double price = 0.0;
        const std::string_view date = two_fields ? trim(row.substr(0, comma)) : row;
        const bool ok = two_fields && valid_iso_date(date) && parse_double(row.substr(comma + 1), price) &&
                        price > 0.0;
        if (!ok) {
            if (!(first_content && two_fields)) bad.push_back(lineno);  // a first row may be a header
            first_content = false;
            continue;
        }
        first_content = false;
        if (!out.dates.empty() && !(date > std::string_view(out.dates.back()))) {
            bad.push_back(lineno);
            continue;
        }
        out.dates.emplace_back(date);
        out.closes.push_back(price);
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "rejected price rows at line(s)";
        for (std::size_t i = 0; i < bad.size() && i < 20; ++i) msg << ' ' << bad[i];
        if (bad.size() > 20) msg << " ... (" << bad.size() << " total)";
        msg << ": expected 'YYYY-MM-DD,positive price' with increasing dates";
        throw DomainError(msg.str());
    }
    if (out.closes.size() < 2) throw DomainError("price series needs at least 2 rows");
    return out;
}

PriceSeries read_price_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open price file '" + path + "'");
    return read_price_csv(in);
}

std::vector<double> log_returns(const std::vector<double>& closes) {
    if (closes.size() < 2) throw DomainError("log_returns: at least 2 prices are required");
    for (double s : closes) {
        if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("log_returns: prices must be positive");
    }
    std::vector<double> r(closes.size() - 1);
    for (std::size_t i = 1; i < closes.size(); ++i) r[i - 1] = std::log(closes[i] / closes[i - 1]);
    return r;
}

std::vector<double> log_returns(const PriceSeries& series) { return log_returns(series.closes); }

RvDataset realized_volatility(const std::vector<double>& returns, std::size_t n, const RvConfig& cfg) {
    if (n < 1) throw DomainError("realized_volatility: window must be at least 1");
    if (cfg.stride < 1) throw DomainError("realized_volatility: stride must be at least 1");
    if (!(cfg.scale > 0.0) || !(cfg.annualization > 0.0)) {
        throw DomainError("realized_volatility: scale and annualization must be positive");
    }
    if (returns.size() < n) throw DomainError("realized_volatility: window longer than the series");
    RvDataset ds;
    ds.n = n;
    const double factor = cfg.annualization / static_cast<double>(n);
    for (std::size_t start = 0; start + n <= returns.size(); start += cfg.stride) {
        double ss = 0.0;
        for (std::size_t k = start; k < start + n; ++k) ss += returns[k] * returns[k];
        const double rv = cfg.scale * std::sqrt(factor * ss);
        if (rv == 0.0) ++ds.zero_count;
        ds.values.push_back(rv);
    }
    ds.count = ds.values.size();
    return ds;
}

std::vector<double> positive_values(const RvDataset& ds) {
    std::vector<double> out;
    out.reserve(ds.values.size());
    for (double v : ds.values) {
        if (v > 0.0) out.push_back(v);
    }
    return out;
}

std::vector<CcdfPoint> empirical_ccdf(const RvDataset& ds) {
    if (ds.values.empty()) throw DomainError("empirical_ccdf: empty dataset");
    std::vector<double> v = ds.values;
    std::sort(v.begin(), v.end());
    const double count = static_cast<double>(v.size());
    std::vector<CcdfPoint> out;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        out.push_back({v[i], (count - static_cast<double>(j)) / count});
        i = j;
    }
    out.back().ccdf = 1.0 / count;
    return out;
}

std::vector<RvDataset> build_all(const PriceSeries& series, const std::vector<std::size_t>& n_list,
                                 const RvConfig& config) {
    if (n_list.empty()) throw DomainError("build_all: empty window list");
    const auto r = log_returns(series);
    std::vector<RvDataset> out;
    out.reserve(n_list.size());
    for (std::size_t n : n_list) out.push_back(realized_volatility(r, n, config));
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericError("SHA-256 digest failed", 0.0);
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

std::string rv_sidecar_json(const RvDataset& ds, const std::string& source_digest) {
    nlohmann::json j;
    j["n"] = ds.n;
    j["count"] = ds.count;
    j["zero_count"] = ds.zero_count;
    j["source_digest"] = source_digest;
    return j.dump(2);
}

}  // namespace gbfam
