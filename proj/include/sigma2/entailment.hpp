#pragma once

#include "sigma2/block_word.hpp"
#include "sigma2/error.hpp"
#include "sigma2/klimit.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigma2 {

/// (position, content), position 1-indexed.
struct Pair {
    int position = 0;
    int content = 0;

    friend auto operator<=>(const Pair&, const Pair&) = default;
};

using PairSet = std::vector<Pair>;

/// Cost caps for the exhaustive entailment searches.
struct EntailmentCaps {
    int max_k = 2;
    int max_r = 5;
};

inline bool agrees(const PackedWord& w, const PairSet& s) {
    for (const auto& [pos, c] : s)
        if (pos < 1 || pos > w.length() || w.at(pos) != c) return false;
    return true;
}

/// Every word of `phi` that agrees with S agrees with some pair of the i-set D.
inline bool entails(const PairSet& s, const PairSet& d, std::span<const PackedWord> phi) {
    if (d.empty()) throw InvalidArgument("an i-set must be nonempty");
    const int i = d.front().position;
    for (const auto& p : d)
        if (p.position != i) throw InvalidArgument("malformed i-set: pairs at positions " + std::to_string(i) +
                                                   " and " + std::to_string(p.position));
    for (const auto& p : s)
        if (p.position == i) throw InvalidArgument("S mentions the entailed position " + std::to_string(i));
    for (const auto& w : phi) {
        if (!agrees(w, s)) continue;
        const bool hit = std::any_of(d.begin(), d.end(), [&](const Pair& p) { return agrees(w, {p}); });
        if (!hit) return false;
    }
    return true;
}

namespace detail {

/// Sorted distinct contents at position i among words agreeing with S; stops once `limit` is exceeded.
inline std::vector<int> contents_at(std::span<const PackedWord> phi, const PairSet& s, int i, std::size_t limit) {
    std::vector<int> out;
    for (const auto& w : phi) {
        if (!agrees(w, s)) continue;
        const int c = w.at(i);
        if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
            if (out.size() > limit) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The pairs of w at the given positions.
inline PairSet restrict_to(const PackedWord& w, const std::vector<int>& positions) {
    PairSet s;
    for (int p : positions) s.push_back({p, w.at(p)});
    return s;
}

inline int check_family(std::span<const PackedWord> phi, int k, const EntailmentCaps& caps) {
    if (phi.empty()) throw InvalidArgument("family is empty");
    const int r = phi.front().length();
    for (const auto& w : phi) {
        if (w.length() != r) throw InvalidArgument("packed words have different lengths");
        for (int c : w.contents)
            if (c < 1 || c > r) throw InvalidArgument("family words must be packed good words");
    }
    if (k < 1) throw InvalidArgument("k must be positive");
    if (k > r - 1)
        throw DegenerateConfig("k = " + std::to_string(k) + " exceeds r - 1 = " + std::to_string(r - 1) +
                               "; no k-set of other positions exists");
    if (k > caps.max_k || r > caps.max_r)
        throw InvalidArgument("entailment search with k = " + std::to_string(k) + ", r = " + std::to_string(r) +
                              " exceeds the caps (k <= " + std::to_string(caps.max_k) +
                              ", r <= " + std::to_string(caps.max_r) + ")");
    return r;
}

}  // namespace detail

/// Sorted, deduplicated packed forms of a family of good words.
inline std::vector<PackedWord> pack_family(std::span<const std::string> family) {
    std::vector<PackedWord> out;
    for (const auto& w : family) {
        if (!is_good(w)) throw PreconditionViolated("'" + w + "' is not in good_n");
        out.push_back(pack(w));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Lexicographically first k-set S of other positions agreeing with mu that entails an i-set of
/// size <= k containing (i, mu_i). D is the smallest such set: the contents reachable under S.
inline std::optional<std::pair<PairSet, PairSet>> entailing_sets(std::span<const PackedWord> phi,
                                                                const PackedWord& mu, int i, int k) {
    const int r = mu.length();
    std::vector<int> others;
    for (int p = 1; p <= r; ++p)
        if (p != i) others.push_back(p);
    std::optional<std::pair<PairSet, PairSet>> found;
    for_each_combination(static_cast<int>(others.size()), k, [&](const std::vector<int>& idx) {
        std::vector<int> positions;
        for (int j : idx) positions.push_back(others[j]);
        PairSet s = detail::restrict_to(mu, positions);
        const auto cs = detail::contents_at(phi, s, i, static_cast<std::size_t>(k));
        if (cs.size() > static_cast<std::size_t>(k)) return true;
        PairSet d;
        for (int c : cs) d.push_back({i, c});
        found = std::make_pair(std::move(s), std::move(d));
        return false;
    });
    return found;
}

struct EntailmentCertificate {
    PackedWord word;
    int position = 0;
    PairSet s;
    PairSet d;
};

struct TangledResult {
    bool tangled = true;
    /// When tangled: one certificate per (word, position), words in sorted order.
    std::vector<EntailmentCertificate> certificates;
    /// When not tangled: the lexicographically smallest (nu, i) with no entailment.
    std::optional<std::pair<PackedWord, int>> witness;
};

inline TangledResult is_tangled(std::span<const PackedWord> family, int k, const EntailmentCaps& caps = {}) {
    std::vector<PackedWord> phi(family.begin(), family.end());
    std::sort(phi.begin(), phi.end());
    phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
    const int r = detail::check_family(phi, k, caps);
    TangledResult out;
    for (const auto& mu : phi)
        for (int i = 1; i <= r; ++i) {
            auto sets = entailing_sets(phi, mu, i, k);
            if (!sets) {
                out.tangled = false;
                out.certificates.clear();
                out.witness = std::make_pair(mu, i);
                return out;
            }
            out.certificates.push_back({mu, i, std::move(sets->first), std::move(sets->second)});
        }
    return out;
}

inline TangledResult is_tangled(std::span<const std::string> family, int k, const EntailmentCaps& caps = {}) {
    const auto phi = pack_family(family);
    return is_tangled(std::span<const PackedWord>(phi), k, caps);
}

/// Property 1: nu in phi, mu differs from nu at exactly one position i, and mu_i is bottom.
/// Property 2: for every C containing nu_i and every P avoiding i with |C| + |P| = k, some
/// lambda in phi has lambda_i outside C and agrees with nu on P.
inline bool check_packed_limit_conditions(const PackedWord& mu, const PackedWord& nu, std::span<const PackedWord> phi,
                                          int k) {
    const int r = nu.length();
    if (mu.length() != r) return false;
    if (std::find(phi.begin(), phi.end(), nu) == phi.end()) return false;
    int i = 0;
    for (int p = 1; p <= r; ++p)
        if (mu.at(p) != nu.at(p)) {
            if (i != 0) return false;
            i = p;
        }
    if (i == 0 || mu.at(i) != PackedWord::kBottom || nu.at(i) == PackedWord::kBottom) return false;

    std::vector<int> other_contents, other_positions;
    for (int c = 1; c <= r; ++c)
        if (c != nu.at(i)) other_contents.push_back(c);
    for (int p = 1; p <= r; ++p)
        if (p != i) other_positions.push_back(p);
    for (int csize = 1; csize <= k; ++csize) {
        const int psize = k - csize;
        const bool ok = for_each_combination(r - 1, csize - 1, [&](const std::vector<int>& cidx) {
            std::vector<int> c{nu.at(i)};
            for (int j : cidx) c.push_back(other_contents[j]);
            return for_each_combination(r - 1, psize, [&](const std::vector<int>& pidx) {
                for (const auto& lambda : phi) {
                    if (lambda.length() != r) continue;
                    if (std::find(c.begin(), c.end(), lambda.at(i)) != c.end()) continue;
                    bool match = true;
                    for (int j : pidx)
                        if (lambda.at(other_positions[j]) != nu.at(other_positions[j])) {
                            match = false;
                            break;
                        }
                    if (match) return true;
                }
                return false;
            });
        });
        if (!ok) return false;
    }
    return true;
}

struct EntailmentLimit {
    PackedWord nu;
    int position = 0;
    PackedWord mu;
    std::string word;
};

/// Bad k-limit of a non-tangled family: nu with its unentailed position set to bottom.
/// Returns nullopt iff the family is tangled. The result is verified before it is returned.
inline std::optional<EntailmentLimit> bad_limit_via_entailment(std::span<const std::string> family, int k,
                                                               const EntailmentCaps& caps = {}) {
    const auto phi = pack_family(family);
    const auto t = is_tangled(std::span<const PackedWord>(phi), k, caps);
    if (t.tangled) return std::nullopt;
    EntailmentLimit out;
    out.nu = t.witness->first;
    out.position = t.witness->second;
    out.mu = out.nu;
    out.mu.contents[out.position - 1] = PackedWord::kBottom;
    out.word = unpack(out.mu);
    if (!check_packed_limit_conditions(out.mu, out.nu, phi, k) || !is_bad(out.word) ||
        !is_k_limit(out.word, family, k))
        throw std::logic_error("entailment limit failed verification: " + out.word);
    return out;
}

/// Description of one word: the fully specified positions, their contents, and one index in
/// [k] per position recovered through an entailment.
struct TangledCode {
    std::vector<int> positions;
    std::vector<int> contents;
    std::vector<int> choices;

    friend auto operator<=>(const TangledCode&, const TangledCode&) = default;
};

struct TangledEncoding {
    int k = 0;
    int r = 0;
    /// Size every K is padded to: floor(k·r/(k+1)).
    int specified = 0;
    std::vector<PackedWord> words;
    /// K as built from the certificates, before padding.
    std::vector<std::vector<int>> kernels;
    std::vector<TangledCode> codes;
    int max_kernel = 0;
    bool kernel_bound_holds = true;
    bool round_trip = true;
    bool injective = true;
    /// C(r, m) · r^m · k^(r - m) with m = specified.
    boost::multiprecision::cpp_int bound;
    bool bound_holds = true;

    bool verified() const { return kernel_bound_holds && round_trip && injective && bound_holds; }
};

namespace detail {

/// Runs the deterministic decoding from the specified pairs. Each call of `choose(i, C)` returns the
/// index (1-based) of the content at position i within C, or 0 to abort.
template <typename Choose>
std::optional<PackedWord> run_decoder(std::span<const PackedWord> phi, int r, int k, const std::vector<int>& positions,
                                      const std::vector<int>& contents, Choose&& choose) {
    PackedWord w{std::vector<int>(r, PackedWord::kBottom)};
    std::vector<char> known(r + 1, 0);
    for (std::size_t j = 0; j < positions.size(); ++j) {
        w.contents[positions[j] - 1] = contents[j];
        known[positions[j]] = 1;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<int> spec;
        for (int p = 1; p <= r; ++p)
            if (known[p]) spec.push_back(p);
        if (static_cast<int>(spec.size()) == r) return w;
        for_each_combination(static_cast<int>(spec.size()), k, [&](const std::vector<int>& idx) {
            std::vector<int> sp;
            for (int j : idx) sp.push_back(spec[j]);
            const PairSet s = restrict_to(w, sp);
            for (int i = 1; i <= r; ++i) {
                if (known[i]) continue;
                const auto c = contents_at(phi, s, i, static_cast<std::size_t>(k));
                if (c.empty() || c.size() > static_cast<std::size_t>(k)) continue;
                const int pick = choose(i, c);
                if (pick < 1 || pick > static_cast<int>(c.size())) return false;
                w.contents[i - 1] = c[pick - 1];
                known[i] = 1;
                progress = true;
                return false;
            }
            return true;
        });
        if (!progress) break;
    }
    for (int p = 1; p <= r; ++p)
        if (!known[p]) return std::nullopt;
    return w;
}

}  // namespace detail

/// Decodes a description against phi; nullopt when it does not describe a full word.
inline std::optional<PackedWord> decode(const TangledCode& code, std::span<const PackedWord> phi, int r, int k) {
    if (code.positions.size() != code.contents.size()) return std::nullopt;
    std::size_t next = 0;
    return detail::run_decoder(phi, r, k, code.positions, code.contents, [&](int, const std::vector<int>&) {
        return next < code.choices.size() ? code.choices[next++] : 0;
    });
}

/// Describes every word of a tangled family by K (padded to floor(k·r/(k+1)) positions), the
/// contents there, and one choice in [k] per remaining position, then checks the description
/// decodes back, is injective, and respects the counting bound.
inline TangledEncoding tangled_encoding(std::span<const PackedWord> family, int k, const EntailmentCaps& caps = {}) {
    const auto t = is_tangled(family, k, caps);
    if (!t.tangled) throw PreconditionViolated("family is not k-tangled");
    std::vector<PackedWord> phi(family.begin(), family.end());
    std::sort(phi.begin(), phi.end());
    phi.erase(std::unique(phi.begin(), phi.end()), phi.end());

    TangledEncoding out;
    out.k = k;
    out.r = phi.front().length();
    const int r = out.r;
    out.specified = k * r / (k + 1);
    out.words = phi;
    const auto certificate = [&](std::size_t word, int i) -> const EntailmentCertificate& {
        return t.certificates[word * r + (i - 1)];
    };

    for (std::size_t w = 0; w < phi.size(); ++w) {
        const auto& mu = phi[w];
        std::vector<char> in_k(r + 1, 0), in_plus(r + 1, 0);
        int plus = 0;
        while (plus < r) {
            int i = 1;
            while (in_plus[i]) ++i;
            for (const auto& [pos, c] : certificate(w, i).s)
                if (!in_plus[pos]) {
                    in_k[pos] = in_plus[pos] = 1;
                    ++plus;
                }
            in_plus[i] = 1;
            ++plus;
        }
        std::vector<int> kernel;
        for (int p = 1; p <= r; ++p)
            if (in_k[p]) kernel.push_back(p);
        out.max_kernel = std::max(out.max_kernel, static_cast<int>(kernel.size()));
        if ((k + 1) * static_cast<int>(kernel.size()) > k * r) out.kernel_bound_holds = false;

        TangledCode code;
        for (int p = 1; p <= r && static_cast<int>(kernel.size()) < out.specified; ++p)
            if (!in_k[p]) {
                in_k[p] = 1;
                kernel.push_back(p);
            }
        for (int p = 1; p <= r; ++p)
            if (in_k[p]) {
                code.positions.push_back(p);
                code.contents.push_back(mu.at(p));
            }
        const int free_positions = r - static_cast<int>(code.positions.size());
        const auto decoded =
            detail::run_decoder(phi, r, k, code.positions, code.contents, [&](int i, const std::vector<int>& c) {
                const auto it = std::find(c.begin(), c.end(), mu.at(i));
                if (it == c.end()) return 0;
                code.choices.push_back(static_cast<int>(it - c.begin()) + 1);
                return code.choices.back();
            });
        if (!decoded || *decoded != mu) out.round_trip = false;
        code.choices.resize(static_cast<std::size_t>(std::max(free_positions, 0)), 1);
        if (decode(code, phi, r, k) != std::optional<PackedWord>(mu)) out.round_trip = false;
        out.kernels.push_back(std::move(kernel));
        out.codes.push_back(std::move(code));
    }

    auto sorted = out.codes;
    std::sort(sorted.begin(), sorted.end());
    out.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

    using boost::multiprecision::cpp_int;
    const int m = out.specified;
    out.bound = cpp_int(binomial(r, m)) * boost::multiprecision::pow(cpp_int(r), m) *
                boost::multiprecision::pow(cpp_int(k), r - m);
    out.bound_holds = cpp_int(phi.size()) <= out.bound;
    return out;
}

inline TangledEncoding tangled_encoding(std::span<const std::string> family, int k, const EntailmentCaps& caps = {}) {
    const auto phi = pack_family(family);
    return tangled_encoding(std::span<const PackedWord>(phi), k, caps);
}

}  // namespace sigma2
