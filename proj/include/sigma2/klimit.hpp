#pragma once

#include "sigma2/error.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigma2 {

/// Calls `fn(indices)` for every k-subset of {0..n-1} in lexicographic order, until fn returns false.
/// Returns false iff enumeration was stopped early.
template <typename Fn>
bool for_each_combination(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return true;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(static_cast<const std::vector<int>&>(idx))) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return out;
}

/// First set of k positions (1-indexed) on which no word of `family` agrees with u, or nullopt
/// when u is a k-limit. Exhaustive over all C(n, k) position sets.
inline std::optional<std::vector<int>> k_limit_violation(const std::string& u, std::span<const std::string> family,
                                                         int k) {
    const int n = static_cast<int>(u.size());
    if (n > 64) throw InvalidArgument("k-limit checks support words of length at most 64");
    if (k < 0 || k > n) throw InvalidArgument("k must lie in [0, n]");
    std::vector<std::uint64_t> disagree;
    disagree.reserve(family.size());
    for (const auto& v : family) {
        if (static_cast<int>(v.size()) != n) throw InvalidArgument("family word '" + v + "' has the wrong length");
        std::uint64_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (v[i] != u[i]) mask |= std::uint64_t{1} << i;
        disagree.push_back(mask);
    }
    std::optional<std::vector<int>> violation;
    for_each_combination(n, k, [&](const std::vector<int>& idx) {
        std::uint64_t chosen = 0;
        for (int i : idx) chosen |= std::uint64_t{1} << i;
        for (auto mask : disagree)
            if ((mask & chosen) == 0) return true;
        std::vector<int> positions;
        for (int i : idx) positions.push_back(i + 1);
        violation = std::move(positions);
        return false;
    });
    return violation;
}

/// For every k positions, some word of `family` agrees with u on all of them.
inline bool is_k_limit(const std::string& u, std::span<const std::string> family, int k) {
    return !k_limit_violation(u, family, k).has_value();
}

}  // namespace sigma2
