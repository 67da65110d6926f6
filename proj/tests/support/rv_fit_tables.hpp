#pragma once

#include <array>

#include "gbfam/dist_spec.hpp"

namespace testsupport {

// GB and mGB fits of daily S&P500 realized volatility, 1970-2021, by window n.
struct FitRow {
    int n;
    gbfam::GBParams params;
    double ks;
    double ks_table;
};

inline constexpr std::array<FitRow, 9> kGbRows{{
    {1, {1.5457, 398.8160, 27.4217, 0.6648, 2.7871}, 0.0102, 0.0119},
    {2, {2.0163, 316.3938, 16.6113, 0.8805, 1.8097}, 0.0044, 0.0119},
    {3, {2.1444, 254.1085, 13.2608, 1.2549, 1.6824}, 0.0074, 0.0119},
    {5, {2.2971, 196.7883, 10.8962, 1.7834, 1.5348}, 0.0043, 0.0119},
    {7, {2.4789, 179.8124, 9.7236, 2.1369, 1.3815}, 0.0060, 0.0120},
    {9, {2.4734, 169.5618, 9.0164, 2.5880, 1.3855}, 0.0048, 0.0120},
    {13, {2.4317, 137.6122, 7.6590, 3.8712, 1.4172}, 0.0075, 0.0120},
    {17, {2.2842, 117.9511, 6.3396, 6.1014, 1.5241}, 0.0063, 0.0120},
    {21, {2.3979, 106.5157, 6.2021, 6.5453, 1.4415}, 0.0068, 0.0120},
}};

inline constexpr std::array<FitRow, 9> kMgbRows{{
    {1, {1.5500, 399.9009, 27.4233, 0.6519, 1.7828}, 0.0087, 0.0119},
    {2, {1.9541, 302.8320, 16.2974, 0.9384, 0.8642}, 0.0052, 0.0119},
    {3, {2.1195, 254.8331, 13.2632, 1.25611, 0.6836}, 0.0053, 0.0119},
    {5, {2.3708, 200.5519, 10.7210, 1.7255, 0.4456}, 0.0054, 0.0119},
    {7, {2.4744, 180.8711, 9.7136, 2.1430, 0.3848}, 0.0051, 0.0120},
    {9, {2.5239, 160.224, 8.9839, 2.5856, 0.3582}, 0.0064, 0.0120},
    {13, {2.4506, 167.4719, 7.7488, 3.7661, 0.4092}, 0.0062, 0.0120},
    {17, {2.3026, 120.1110, 6.3561, 6.1121, 0.5403}, 0.0074, 0.0120},
    {21, {2.4016, 104.9925, 6.3853, 6.3429, 0.50434}, 0.0067, 0.0120},
}};

}  // namespace testsupport
