#pragma once

#include "sigma2/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace sigma2 {

struct SizeThreshold {
    int n = 0;
    int r = 0;
};

/// r^r >= k^r · n^d, exact.
inline bool large_enough_for_flower(int r, int k, int d) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::pow;
    return pow(cpp_int(r), r) >= pow(cpp_int(k), r) * pow(cpp_int(r), 2 * d);
}

/// r^r / n^d >= r^(2kr/(2k+1)), compared on exponents of r (valid for r >= 2).
inline bool large_enough_for_tangled(int r, int k, int d) {
    if (r < 2) return true;
    return static_cast<long long>(r - 2 * d) * (2 * k + 1) >= 2LL * k * r;
}

/// Smallest perfect square n = r² with r >= k + 1 meeting both size conditions.
inline SizeThreshold size_thresholds(int k, int d, int max_r = 100000) {
    if (k < 1 || d < 0) throw InvalidArgument("size_thresholds needs k >= 1 and d >= 0");
    for (int r = k + 1; r <= max_r; ++r)
        if (large_enough_for_tangled(r, k, d) && large_enough_for_flower(r, k, d)) return {r * r, r};
    throw InvalidArgument("no threshold found below r = " + std::to_string(max_r));
}

}  // namespace sigma2
