#pragma once

#include "sigma2/dfa.hpp"
#include "sigma2/error.hpp"
#include "sigma2/word.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sigma2 {

/// Index of a monoid element.
using Element = int;

inline constexpr std::size_t kMaxMonoidSize = 4096;

/// Finite monoid given by its multiplication table, together with the morphism from the free
/// monoid: each alphabet symbol is mapped to a generator element.
class FiniteMonoid {
public:
    FiniteMonoid() = default;

    /// Checks every invariant (identity laws, generation, and associativity unless the caller
    /// vouches for it) and throws InvalidArgument.
    FiniteMonoid(std::vector<std::vector<Element>> table, Element identity,
                 std::vector<std::pair<Symbol, Element>> generators, bool check_associativity = true)
        : table_(std::move(table)), identity_(identity), generators_(std::move(generators)) {
        validate(check_associativity);
        compute_representatives();
    }

    int size() const { return static_cast<int>(table_.size()); }
    Element identity() const { return identity_; }
    Element multiply(Element a, Element b) const { return table_[a][b]; }
    Element multiply(Element a, Element b, Element c) const { return table_[table_[a][b]][c]; }
    const std::vector<std::vector<Element>>& table() const { return table_; }

    /// The morphism on letters, in alphabet order.
    const std::vector<std::pair<Symbol, Element>>& generators() const { return generators_; }
    Alphabet alphabet() const {
        Alphabet out;
        for (const auto& [s, e] : generators_) out.push_back(s);
        return out;
    }
    Element image(const Symbol& s) const {
        for (const auto& [name, e] : generators_)
            if (name == s) return e;
        throw UnknownSymbol(s);
    }

    /// h(w) for a word over the alphabet.
    Element evaluate(const Word& w) const {
        Element acc = identity_;
        for (const auto& s : w) acc = table_[acc][image(s)];
        return acc;
    }

    /// Product of a sequence of elements.
    Element product(std::span<const Element> elements) const {
        Element acc = identity_;
        for (Element e : elements) {
            check(e);
            acc = table_[acc][e];
        }
        return acc;
    }

    bool is_idempotent(Element e) const { return table_[e][e] == e; }

    std::vector<Element> idempotents() const {
        std::vector<Element> out;
        for (Element e = 0; e < size(); ++e)
            if (is_idempotent(e)) out.push_back(e);
        return out;
    }

    /// Shortlex-least word evaluating to `e`.
    const Word& representative(Element e) const { return representatives_[e]; }

    /// Symbolic name used when elements are letters of an up-word problem.
    static std::string element_name(Element e) { return "e" + std::to_string(e); }

    Element element_from_name(const std::string& name) const {
        if (name.size() >= 2 && name[0] == 'e') {
            try {
                std::size_t used = 0;
                const int v = std::stoi(name.substr(1), &used);
                if (used == name.size() - 1 && v >= 0 && v < size()) return v;
            } catch (const std::exception&) {
            }
        }
        throw UnknownSymbol(name);
    }

    void check(Element e) const {
        if (e < 0 || e >= size()) throw InvalidArgument("element " + std::to_string(e) + " out of range");
    }

    friend bool operator==(const FiniteMonoid&, const FiniteMonoid&) = default;

private:
    void validate(bool check_associativity) const {
        const int m = size();
        if (m == 0) throw InvalidArgument("empty monoid");
        if (static_cast<std::size_t>(m) > kMaxMonoidSize) throw MonoidTooLarge(kMaxMonoidSize);
        if (identity_ < 0 || identity_ >= m) throw InvalidArgument("identity out of range");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != m) throw InvalidArgument("multiplication table is not square");
            for (Element e : row)
                if (e < 0 || e >= m) throw InvalidArgument("table entry out of range");
        }
        for (Element a = 0; a < m; ++a)
            if (table_[identity_][a] != a || table_[a][identity_] != a)
                throw InvalidArgument("identity law fails at element " + std::to_string(a));
        for (Element a = 0; a < m && check_associativity; ++a)
            for (Element b = 0; b < m; ++b)
                for (Element c = 0; c < m; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw InvalidArgument("multiplication is not associative");
        for (const auto& [s, e] : generators_)
            if (e < 0 || e >= m) throw InvalidArgument("generator image out of range");
    }

    // BFS over right multiplication by generators; also proves every element is generated.
    void compute_representatives() {
        const int m = size();
        representatives_.assign(m, {});
        std::vector<char> seen(m, 0);
        std::vector<Element> queue{identity_};
        seen[identity_] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Element e = queue[head];
            for (const auto& [s, g] : generators_) {
                const Element t = table_[e][g];
                if (seen[t]) continue;
                seen[t] = 1;
                representatives_[t] = representatives_[e];
                representatives_[t].push_back(s);
                queue.push_back(t);
            }
        }
        if (static_cast<int>(queue.size()) != m) throw InvalidArgument("monoid is not generated by its letters");
    }

    std::vector<std::vector<Element>> table_;
    Element identity_ = 0;
    std::vector<std::pair<Symbol, Element>> generators_;
    std::vector<Word> representatives_;
};

/// A state transformation of a DFA: `map[q]` is the state reached from `q`.
using Transformation = std::vector<State>;

struct TransitionMonoid {
    FiniteMonoid monoid;
    /// transformations[e] is the transformation realized by element e.
    std::vector<Transformation> transformations;
};

namespace detail {

/// Transition monoid of an arbitrary complete DFA given as a raw table. Elements are numbered in
/// BFS order from the identity, extending by letters in alphabet order.
inline TransitionMonoid transition_monoid_of(const Alphabet& alphabet, const std::vector<std::vector<State>>& delta) {
    const int states = static_cast<int>(delta.size());
    const int letters = static_cast<int>(alphabet.size());
    std::map<Transformation, Element> index;
    std::vector<Transformation> elems;
    auto intern = [&](Transformation t) {
        auto [it, fresh] = index.emplace(std::move(t), static_cast<Element>(elems.size()));
        if (fresh) {
            if (elems.size() >= kMaxMonoidSize) throw MonoidTooLarge(kMaxMonoidSize);
            elems.push_back(it->first);
        }
        return it->second;
    };
    Transformation id(states);
    for (State q = 0; q < states; ++q) id[q] = q;
    intern(id);
    std::vector<Element> generator_of(letters);
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (int a = 0; a < letters; ++a) {
            Transformation t(states);
            for (State q = 0; q < states; ++q) t[q] = delta[elems[head][q]][a];
            const Element e = intern(std::move(t));
            if (head == 0) generator_of[a] = e;
        }
    }
    const int m = static_cast<int>(elems.size());
    std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
    for (Element x = 0; x < m; ++x)
        for (Element y = 0; y < m; ++y) {
            Transformation t(states);
            for (State q = 0; q < states; ++q) t[q] = elems[y][elems[x][q]];
            table[x][y] = index.at(t);
        }
    std::vector<std::pair<Symbol, Element>> gens;
    for (int a = 0; a < letters; ++a) gens.emplace_back(alphabet[a], generator_of[a]);
    // Composition of functions is associative, so the cubic check is skipped.
    return {FiniteMonoid(std::move(table), 0, std::move(gens), false), std::move(elems)};
}

}  // namespace detail

/// Transition monoid of a (minimal) DFA; its element 0 is the identity.
/// Throws MonoidTooLarge past kMaxMonoidSize elements.
inline TransitionMonoid transition_monoid(const Dfa& d) { return detail::transition_monoid_of(d.alphabet(), d.delta()); }

/// Elements e with e(initial) accepting; these are the images of the words of L(d).
inline std::vector<bool> accepting_elements(const TransitionMonoid& tm, const Dfa& d) {
    std::vector<bool> out(tm.transformations.size());
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = d.is_accepting(tm.transformations[e][d.initial()]);
    return out;
}

/// Monoid with a partial order compatible with the product.
class OrderedMonoid {
public:
    OrderedMonoid() = default;
    OrderedMonoid(FiniteMonoid monoid, std::vector<std::vector<bool>> order)
        : monoid_(std::move(monoid)), order_(std::move(order)) {}

    const FiniteMonoid& monoid() const { return monoid_; }
    bool leq(Element s, Element t) const { return order_[s][t]; }
    const std::vector<std::vector<bool>>& order() const { return order_; }
    int size() const { return monoid_.size(); }

    /// Throws InvalidArgument naming the first violated property.
    void validate() const {
        const int m = size();
        if (static_cast<int>(order_.size()) != m) throw InvalidArgument("order matrix has wrong size");
        for (const auto& row : order_)
            if (static_cast<int>(row.size()) != m) throw InvalidArgument("order matrix has wrong size");
        for (Element s = 0; s < m; ++s) {
            if (!order_[s][s]) throw InvalidArgument("order is not reflexive");
            for (Element t = 0; t < m; ++t) {
                if (s != t && order_[s][t] && order_[t][s]) throw InvalidArgument("order is not antisymmetric");
                if (!order_[s][t]) continue;
                for (Element u = 0; u < m; ++u) {
                    if (order_[t][u] && !order_[s][u]) throw InvalidArgument("order is not transitive");
                    if (!order_[monoid_.multiply(s, u)][monoid_.multiply(t, u)] ||
                        !order_[monoid_.multiply(u, s)][monoid_.multiply(u, t)])
                        throw InvalidArgument("order is not compatible with the product");
                }
            }
        }
    }

    friend bool operator==(const OrderedMonoid&, const OrderedMonoid&) = default;

private:
    FiniteMonoid monoid_;
    std::vector<std::vector<bool>> order_;
};

/// Syntactic order: s <= t iff every context (p, q) with p·s·q in P also has p·t·q in P.
///
/// With this direction P is an upper set. Throws InvalidArgument if two distinct elements have
/// the same contexts, which happens exactly when the monoid does not come from a minimal DFA.
inline OrderedMonoid syntactic_order(const FiniteMonoid& m, const std::vector<bool>& accepting) {
    const int size = m.size();
    if (static_cast<int>(accepting.size()) != size) throw InvalidArgument("accepting set has wrong size");
    const std::size_t words = (static_cast<std::size_t>(size) + 63) / 64;

    // right[u] = { q : u·q in P } as a bitset
    std::vector<std::vector<std::uint64_t>> right(size, std::vector<std::uint64_t>(words, 0));
    for (Element u = 0; u < size; ++u)
        for (Element q = 0; q < size; ++q)
            if (accepting[m.multiply(u, q)]) right[u][q / 64] |= std::uint64_t{1} << (q % 64);

    std::vector<std::vector<bool>> included(size, std::vector<bool>(size));
    for (Element u = 0; u < size; ++u)
        for (Element v = 0; v < size; ++v) {
            bool sub = true;
            for (std::size_t w = 0; w < words && sub; ++w) sub = (right[u][w] & ~right[v][w]) == 0;
            included[u][v] = sub;
        }

    std::vector<std::vector<bool>> order(size, std::vector<bool>(size));
    for (Element s = 0; s < size; ++s)
        for (Element t = 0; t < size; ++t) {
            bool le = true;
            for (Element p = 0; p < size && le; ++p) le = included[m.multiply(p, s)][m.multiply(p, t)];
            order[s][t] = le;
        }
    for (Element s = 0; s < size; ++s)
        for (Element t = s + 1; t < size; ++t)
            if (order[s][t] && order[t][s])
                throw InvalidArgument("syntactic order is not antisymmetric (elements " + std::to_string(s) + " and " +
                                      std::to_string(t) + "); the automaton was not minimal");
    return OrderedMonoid(m, std::move(order));
}

/// Ordered monoid, morphism and accepting upper set recognizing a language.
class Recognition {
public:
    Recognition() = default;
    Recognition(OrderedMonoid ordered, std::vector<bool> accepting)
        : ordered_(std::move(ordered)), accepting_(std::move(accepting)) {}

    const OrderedMonoid& ordered() const { return ordered_; }
    const FiniteMonoid& monoid() const { return ordered_.monoid(); }
    const std::vector<bool>& accepting() const { return accepting_; }
    bool in_accepting(Element e) const { return accepting_[e]; }
    bool leq(Element s, Element t) const { return ordered_.leq(s, t); }
    int size() const { return ordered_.size(); }

    bool accepts(const Word& w) const { return accepting_[monoid().evaluate(w)]; }

    bool accepting_is_upper_set() const {
        for (Element s = 0; s < size(); ++s)
            for (Element t = 0; t < size(); ++t)
                if (accepting_[s] && leq(s, t) && !accepting_[t]) return false;
        return true;
    }

    /// First context (p, q), in index order, with p·s·q accepted and p·t·q rejected.
    std::optional<std::pair<Element, Element>> separating_context(Element s, Element t) const {
        const auto& m = monoid();
        for (Element p = 0; p < size(); ++p)
            for (Element q = 0; q < size(); ++q)
                if (accepting_[m.multiply(p, s, q)] && !accepting_[m.multiply(p, t, q)]) return std::pair{p, q};
        return std::nullopt;
    }

    /// The recognition of the complement: same monoid, complemented accepting set, reversed order.
    Recognition complement() const {
        std::vector<bool> acc(accepting_);
        acc.flip();
        std::vector<std::vector<bool>> order(size(), std::vector<bool>(size()));
        for (Element s = 0; s < size(); ++s)
            for (Element t = 0; t < size(); ++t) order[s][t] = ordered_.leq(t, s);
        return Recognition(OrderedMonoid(monoid(), std::move(order)), std::move(acc));
    }

private:
    OrderedMonoid ordered_;
    std::vector<bool> accepting_;
};

/// Ordered syntactic monoid of L(d), with its morphism and accepting upper set.
inline Recognition recognize(const Dfa& d) {
    const auto tm = transition_monoid(d);
    auto acc = accepting_elements(tm, d);
    auto order = syntactic_order(tm.monoid, acc);
    return Recognition(std::move(order), std::move(acc));
}

/// The idempotent power of x.
inline Element omega_power(const FiniteMonoid& m, Element x) {
    m.check(x);
    Element power = x;
    for (int i = 0; i <= m.size(); ++i) {
        if (m.is_idempotent(power)) return power;
        power = m.multiply(power, x);
    }
    throw InvalidArgument("no idempotent power found");  // unreachable in a finite monoid
}

/// Up-word problem for x: does the product of `w` lie above x?
inline bool up_word_accepts(const OrderedMonoid& om, Element x, std::span<const Element> w) {
    om.monoid().check(x);
    return om.leq(x, om.monoid().product(w));
}

/// Same, with `w` written over element names ("e0 e3 e1").
inline bool up_word_accepts(const OrderedMonoid& om, Element x, const Word& w) {
    std::vector<Element> elems;
    elems.reserve(w.size());
    for (const auto& s : w) elems.push_back(om.monoid().element_from_name(s));
    return up_word_accepts(om, x, elems);
}

inline Alphabet element_alphabet(const FiniteMonoid& m) {
    Alphabet out;
    for (Element e = 0; e < m.size(); ++e) out.push_back(FiniteMonoid::element_name(e));
    return out;
}

/// The up-word problem for x as a language over the element alphabet.
inline Dfa up_word_dfa(const OrderedMonoid& om, Element x) {
    const auto& m = om.monoid();
    m.check(x);
    const int size = m.size();
    std::vector<std::vector<State>> delta(size, std::vector<State>(size));
    std::vector<bool> acc(size);
    for (Element s = 0; s < size; ++s) {
        acc[s] = om.leq(x, s);
        for (Element t = 0; t < size; ++t) delta[s][t] = m.multiply(s, t);
    }
    return Dfa::make(element_alphabet(m), size, m.identity(), acc, delta);
}

}  // namespace sigma2
