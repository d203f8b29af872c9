#pragma once

#include "sigma2/block_word.hpp"
#include "sigma2/error.hpp"
#include "sigma2/klimit.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigma2 {

/// Sorted set of 1-indexed positions.
using PositionSet = std::vector<int>;
using SetFamily = std::vector<PositionSet>;

/// A subfamily whose coreless members cannot be hit by fewer than p elements.
struct Flower {
    SetFamily members;
    PositionSet core;
};

inline PositionSet intersection_of(const SetFamily& fam) {
    if (fam.empty()) return {};
    PositionSet acc = fam.front();
    for (const auto& s : fam) {
        PositionSet next;
        std::set_intersection(acc.begin(), acc.end(), s.begin(), s.end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

/// Is there a set of at most `max_size` elements meeting every member of `fam`?
inline bool has_blocking_set(const SetFamily& fam, int max_size) {
    if (fam.empty()) return true;
    for (const auto& s : fam)
        if (s.empty()) return false;
    PositionSet universe;
    for (const auto& s : fam) universe.insert(universe.end(), s.begin(), s.end());
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    const int u = static_cast<int>(universe.size());
    for (int size = 1; size <= std::min(max_size, u); ++size) {
        const bool exhausted = for_each_combination(u, size, [&](const std::vector<int>& idx) {
            for (const auto& s : fam) {
                bool hit = false;
                for (int i : idx)
                    if (std::binary_search(s.begin(), s.end(), universe[i])) {
                        hit = true;
                        break;
                    }
                if (!hit) return true;
            }
            return false;
        });
        if (!exhausted) return true;
    }
    return false;
}

/// Brute-force check: at least p distinct members of equal size, `core` is their intersection,
/// and no set of fewer than p elements meets every coreless member.
inline bool is_flower(const Flower& f, int p) {
    if (p < 1 || static_cast<int>(f.members.size()) < p) return false;
    SetFamily sorted = f.members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (const auto& s : sorted)
        if (s.size() != sorted.front().size()) return false;
    if (intersection_of(sorted) != f.core) return false;
    if (sorted.size() == 1) return p == 1;
    SetFamily coreless;
    for (const auto& s : sorted) {
        PositionSet rest;
        std::set_difference(s.begin(), s.end(), f.core.begin(), f.core.end(), std::back_inserter(rest));
        coreless.push_back(std::move(rest));
    }
    return !has_blocking_set(coreless, p - 1);
}

/// Flower with p petals by the greedy restriction argument: while the current family can be
/// blocked by fewer than p elements, restrict to the members containing the most frequent
/// element (smallest on ties) and remove that element. Always succeeds when the family holds
/// more than (p-1)^s distinct s-sets.
inline std::optional<Flower> find_flower(SetFamily fam, int p) {
    if (p < 1) throw InvalidArgument("a flower needs p >= 1");
    for (auto& s : fam) std::sort(s.begin(), s.end());
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    if (fam.empty()) return std::nullopt;
    for (const auto& s : fam)
        if (s.size() != fam.front().size()) throw InvalidArgument("flower search needs sets of equal cardinality");
    if (p == 1) return Flower{{fam.front()}, fam.front()};

    std::vector<int> alive(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) alive[i] = static_cast<int>(i);
    SetFamily rest = fam;
    PositionSet removed;
    while (static_cast<int>(alive.size()) >= p) {
        SetFamily current;
        for (int i : alive) current.push_back(rest[i]);
        if (!has_blocking_set(current, p - 1)) {
            Flower f;
            for (int i : alive) f.members.push_back(fam[i]);
            f.core = intersection_of(f.members);
            return f;
        }
        std::map<int, int> freq;
        for (int i : alive)
            for (int e : rest[i]) ++freq[e];
        if (freq.empty()) return std::nullopt;
        int best = freq.begin()->first;
        for (const auto& [e, c] : freq)
            if (c > freq[best]) best = e;
        std::vector<int> next;
        for (int i : alive) {
            auto& s = rest[i];
            const auto it = std::lower_bound(s.begin(), s.end(), best);
            if (it == s.end() || *it != best) continue;
            s.erase(it);
            next.push_back(i);
        }
        removed.push_back(best);
        alive = std::move(next);
    }
    return std::nullopt;
}

struct FlowerLimit {
    Flower flower;
    std::string word;
};

/// A k-limit of F outside good_n: the word with a's exactly on the core of a (k+1)-petal flower
/// among the a-position sets of F. Verified before it is returned.
inline std::optional<FlowerLimit> bad_limit_via_flower(std::span<const std::string> family, int k) {
    if (family.empty()) throw InvalidArgument("family is empty");
    if (k < 1) throw InvalidArgument("k must be positive");
    const std::size_t n = family.front().size();
    for (const auto& w : family) {
        if (w.size() != n) throw InvalidArgument("family words have different lengths");
        if (!is_good(w)) throw PreconditionViolated("'" + w + "' is not in good_n");
    }
    SetFamily sets;
    for (const auto& w : family) sets.push_back(tau(w));
    auto flower = find_flower(sets, k + 1);
    if (!flower) return std::nullopt;
    std::string u(n, 'b');
    for (int pos : flower->core) u[pos - 1] = 'a';
    if (is_good(u) || !is_k_limit(u, family, k))
        throw std::logic_error("flower core word failed verification: " + u);
    return FlowerLimit{std::move(*flower), std::move(u)};
}

}  // namespace sigma2
