#pragma once

#include "sigma2/dfa.hpp"
#include "sigma2/monoid.hpp"
#include "sigma2/subword.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigma2 {

/// Failing instance of x <= x·y·x: x idempotent, (x, y) a subword pair, and a context (p, q)
/// with p·x·q accepted while p·x·y·x·q is rejected.
struct EquationWitness {
    Element x = 0, y = 0;
    Element p = 0, q = 0;
    SubwordWitness subword;

    friend bool operator==(const EquationWitness&, const EquationWitness&) = default;
};

struct EquationVerdict {
    bool in_class = true;
    std::optional<EquationWitness> witness;
};

/// Checks a candidate failing pair: returns the first separating context when x is idempotent,
/// (x, y) is in the relation, and x is not below x·y·x.
inline std::optional<EquationWitness> verify_failing_pair(const Recognition& r, const SubwordRelation& sw, Element x,
                                                          Element y) {
    const auto& m = r.monoid();
    m.check(x);
    m.check(y);
    if (!m.is_idempotent(x) || !sw.contains(x, y)) return std::nullopt;
    const Element xyx = m.multiply(x, y, x);
    if (r.leq(x, xyx)) return std::nullopt;
    const auto ctx = r.separating_context(x, xyx);
    if (!ctx) return std::nullopt;
    return EquationWitness{x, y, ctx->first, ctx->second, sw.witness(x, y)};
}

/// Membership in Sigma_2[<]: x <= x·y·x for every idempotent x and every subword y of x.
/// On failure the witness is the first failing (x, y) in index order.
inline EquationVerdict check_sigma2(const Recognition& r, const SubwordRelation& sw) {
    const auto& m = r.monoid();
    for (Element x : m.idempotents())
        for (Element y : sw.subwords_of(x)) {
            if (r.leq(x, m.multiply(x, y, x))) continue;
            return {false, verify_failing_pair(r, sw, x, y)};
        }
    return {true, std::nullopt};
}

/// Letters mapped to the identity of the syntactic monoid.
inline Alphabet neutral_letters(const FiniteMonoid& m) {
    Alphabet out;
    for (const auto& [s, e] : m.generators())
        if (e == m.identity()) out.push_back(s);
    return out;
}

inline Alphabet neutral_letters(const Dfa& d) { return neutral_letters(transition_monoid(d).monoid); }

struct ClassReport {
    std::string description;
    Alphabet alphabet;
    int dfa_states = 0;
    int monoid_size = 0;
    int idempotent_count = 0;
    std::size_t subword_pair_count = 0;
    Alphabet neutral;
    EquationVerdict sigma2;
    EquationVerdict pi2;  // Sigma_2 check on the complement

    bool delta2() const { return sigma2.in_class && pi2.in_class; }
};

/// Runs every decision procedure on L(d). `description` is carried into the report verbatim.
inline ClassReport classify(const Dfa& d, std::string description = {}) {
    const auto rec = recognize(d);
    const auto sw = subword_relation(rec.monoid());
    ClassReport out;
    out.description = std::move(description);
    out.alphabet = d.alphabet();
    out.dfa_states = d.state_count();
    out.monoid_size = rec.size();
    out.idempotent_count = static_cast<int>(rec.monoid().idempotents().size());
    out.subword_pair_count = sw.pair_count();
    out.neutral = neutral_letters(rec.monoid());
    out.sigma2 = check_sigma2(rec, sw);
    out.pi2 = check_sigma2(rec.complement(), sw);
    return out;
}

/// Replays a witness as words through a DFA: p·x·q must be accepted and p·x·y·x·q rejected,
/// with x idempotent and the subword witness evaluating to (x, y).
inline bool replay_witness(const Dfa& d, const EquationWitness& w) {
    const auto tm = transition_monoid(d);
    const auto& m = tm.monoid;
    if (w.x < 0 || w.y < 0 || w.p < 0 || w.q < 0) return false;
    if (w.x >= m.size() || w.y >= m.size() || w.p >= m.size() || w.q >= m.size()) return false;
    const Word& xw = m.representative(w.x);
    const Word& yw = m.representative(w.y);
    const Word& pw = m.representative(w.p);
    const Word& qw = m.representative(w.q);
    if (m.evaluate(concat(xw, xw)) != w.x) return false;
    for (int i : w.subword.embedding)
        if (i < 1 || i > static_cast<int>(w.subword.word.size())) return false;
    if (m.evaluate(w.subword.word) != w.x || m.evaluate(w.subword.subword()) != w.y) return false;
    const Word good = concat(concat(pw, xw), qw);
    const Word bad = concat(concat(concat(concat(pw, xw), yw), xw), qw);
    return d.accepts(good) && !d.accepts(bad);
}

}  // namespace sigma2
