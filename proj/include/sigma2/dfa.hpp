#pragma once

#include "sigma2/error.hpp"
#include "sigma2/regex.hpp"
#include "sigma2/word.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace sigma2 {

using State = int;

/// Total deterministic automaton, always kept minimal and canonically numbered.
///
/// States are numbered in breadth-first order from the initial state (so the initial state is 0),
/// exploring letters in alphabet order. Two automata for the same language over the same ordered
/// alphabet therefore compare equal member-wise.
class Dfa {
public:
    /// Validates a raw transition table, then minimizes and renumbers it.
    /// `delta[q][a]` is the successor of `q` on the `a`-th alphabet symbol.
    static Dfa make(Alphabet alphabet, int states, State initial, const std::vector<bool>& accepting,
                    const std::vector<std::vector<State>>& delta);

    const Alphabet& alphabet() const { return alphabet_; }
    int state_count() const { return static_cast<int>(delta_.size()); }
    State initial() const { return 0; }
    bool is_accepting(State q) const { return accepting_[q]; }
    const std::vector<bool>& accepting() const { return accepting_; }
    State next(State q, int symbol_index) const { return delta_[q][symbol_index]; }
    const std::vector<std::vector<State>>& delta() const { return delta_; }

    /// Index of `s` in the alphabet; throws UnknownSymbol.
    int symbol_index(const Symbol& s) const {
        const auto it = std::find(alphabet_.begin(), alphabet_.end(), s);
        if (it == alphabet_.end()) throw UnknownSymbol(s);
        return static_cast<int>(it - alphabet_.begin());
    }

    State run(State from, const Word& w) const {
        for (const auto& s : w) from = delta_[from][symbol_index(s)];
        return from;
    }

    bool accepts(const Word& w) const { return accepting_[run(0, w)]; }

    bool empty_language() const { return std::none_of(accepting_.begin(), accepting_.end(), [](bool b) { return b; }); }

    friend bool operator==(const Dfa&, const Dfa&) = default;

private:
    Dfa() = default;

    Alphabet alphabet_;
    std::vector<bool> accepting_;
    std::vector<std::vector<State>> delta_;
};

namespace detail {

/// Hopcroft partition refinement on the reachable part of a complete DFA.
/// Returns, for every state, its block index (or -1 when unreachable).
inline std::vector<int> hopcroft_blocks(int states, State initial, const std::vector<bool>& accepting,
                                        const std::vector<std::vector<State>>& delta, int letters) {
    std::vector<char> reachable(states, 0);
    std::vector<State> stack{initial};
    reachable[initial] = 1;
    while (!stack.empty()) {
        const State q = stack.back();
        stack.pop_back();
        for (int a = 0; a < letters; ++a) {
            const State t = delta[q][a];
            if (!reachable[t]) {
                reachable[t] = 1;
                stack.push_back(t);
            }
        }
    }

    // inverse[a][t] = states q with delta[q][a] == t
    std::vector<std::vector<std::vector<State>>> inverse(letters, std::vector<std::vector<State>>(states));
    for (State q = 0; q < states; ++q) {
        if (!reachable[q]) continue;
        for (int a = 0; a < letters; ++a) inverse[a][delta[q][a]].push_back(q);
    }

    std::vector<std::vector<State>> blocks;
    std::vector<int> block_of(states, -1);
    {
        std::vector<State> acc, rej;
        for (State q = 0; q < states; ++q) {
            if (!reachable[q]) continue;
            (accepting[q] ? acc : rej).push_back(q);
        }
        for (auto* b : {&acc, &rej}) {
            if (b->empty()) continue;
            for (State q : *b) block_of[q] = static_cast<int>(blocks.size());
            blocks.push_back(std::move(*b));
        }
    }

    std::set<std::pair<int, int>> work;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int a = 0; a < letters; ++a) work.emplace(b, a);

    std::vector<char> marked(states, 0);
    while (!work.empty()) {
        const auto [splitter, a] = *work.begin();
        work.erase(work.begin());

        std::vector<State> pre;
        for (State t : blocks[splitter])
            for (State q : inverse[a][t])
                if (!marked[q]) {
                    marked[q] = 1;
                    pre.push_back(q);
                }

        std::map<int, std::vector<State>> hit;
        for (State q : pre) hit[block_of[q]].push_back(q);

        for (auto& [y, inside] : hit) {
            if (inside.size() == blocks[y].size()) continue;
            std::vector<State> outside;
            for (State q : blocks[y])
                if (!marked[q]) outside.push_back(q);
            const int z = static_cast<int>(blocks.size());
            blocks[y] = std::move(inside);
            blocks.push_back(std::move(outside));
            for (State q : blocks[z]) block_of[q] = z;
            for (int c = 0; c < letters; ++c) {
                if (work.count({y, c})) work.emplace(z, c);
                else work.emplace(blocks[y].size() <= blocks[z].size() ? y : z, c);
            }
        }
        for (State q : pre) marked[q] = 0;
    }
    return block_of;
}

}  // namespace detail

inline Dfa Dfa::make(Alphabet alphabet, int states, State initial, const std::vector<bool>& accepting,
                     const std::vector<std::vector<State>>& delta) {
    const int letters = static_cast<int>(alphabet.size());
    {
        std::set<Symbol> seen;
        for (const auto& s : alphabet) {
            if (s.empty()) throw InvalidArgument("empty alphabet symbol");
            if (!seen.insert(s).second) throw InvalidArgument("duplicate alphabet symbol '" + s + "'");
        }
    }
    if (states <= 0) throw InvalidArgument("a DFA needs at least one state");
    if (initial < 0 || initial >= states) throw InvalidArgument("initial state out of range");
    if (static_cast<int>(accepting.size()) != states) throw InvalidArgument("accepting vector has wrong length");
    if (static_cast<int>(delta.size()) != states) throw InvalidArgument("transition table has wrong row count");
    for (const auto& row : delta) {
        if (static_cast<int>(row.size()) != letters) throw InvalidArgument("transition table is not total");
        for (State t : row)
            if (t < 0 || t >= states) throw InvalidArgument("transition target out of range");
    }

    const auto block_of = detail::hopcroft_blocks(states, initial, accepting, delta, letters);
    int block_count = 0;
    for (int b : block_of) block_count = std::max(block_count, b + 1);
    std::vector<State> representative(block_count, -1);
    for (State q = 0; q < states; ++q)
        if (block_of[q] >= 0 && representative[block_of[q]] < 0) representative[block_of[q]] = q;

    // Canonical renumbering: BFS over blocks from the initial block.
    std::vector<int> number(block_count, -1);
    std::vector<int> order;
    number[block_of[initial]] = 0;
    order.push_back(block_of[initial]);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const State q = representative[order[head]];
        for (int a = 0; a < letters; ++a) {
            const int b = block_of[delta[q][a]];
            if (number[b] < 0) {
                number[b] = static_cast<int>(order.size());
                order.push_back(b);
            }
        }
    }

    Dfa d;
    d.alphabet_ = std::move(alphabet);
    d.accepting_.resize(order.size());
    d.delta_.assign(order.size(), std::vector<State>(letters));
    for (std::size_t i = 0; i < order.size(); ++i) {
        const State q = representative[order[i]];
        d.accepting_[i] = accepting[q];
        for (int a = 0; a < letters; ++a) d.delta_[i][a] = number[block_of[delta[q][a]]];
    }
    return d;
}

namespace detail {

// Position (Glushkov) automaton data for one AST node.
struct GlushkovInfo {
    bool nullable = false;
    std::set<int> first, last;
};

class Glushkov {
public:
    explicit Glushkov(const Alphabet& alphabet) : alphabet_(alphabet) {}

    GlushkovInfo visit(const RegularExpr& e) {
        GlushkovInfo out;
        switch (e.kind()) {
            case RegexKind::empty: break;
            case RegexKind::epsilon: out.nullable = true; break;
            case RegexKind::letter: {
                const auto it = std::find(alphabet_.begin(), alphabet_.end(), e.symbol());
                if (it == alphabet_.end()) throw UnknownSymbol(e.symbol());
                const int p = static_cast<int>(position_letter.size()) + 1;
                position_letter.push_back(static_cast<int>(it - alphabet_.begin()));
                follow.emplace_back();
                out.first = out.last = {p};
                break;
            }
            case RegexKind::alternation: {
                auto l = visit(e.left());
                auto r = visit(e.right());
                out.nullable = l.nullable || r.nullable;
                out.first = l.first;
                out.first.insert(r.first.begin(), r.first.end());
                out.last = l.last;
                out.last.insert(r.last.begin(), r.last.end());
                break;
            }
            case RegexKind::concatenation: {
                auto l = visit(e.left());
                auto r = visit(e.right());
                for (int p : l.last) follow[p - 1].insert(r.first.begin(), r.first.end());
                out.nullable = l.nullable && r.nullable;
                out.first = l.first;
                if (l.nullable) out.first.insert(r.first.begin(), r.first.end());
                out.last = r.last;
                if (r.nullable) out.last.insert(l.last.begin(), l.last.end());
                break;
            }
            case RegexKind::star: {
                out = visit(e.left());
                for (int p : out.last) follow[p - 1].insert(out.first.begin(), out.first.end());
                out.nullable = true;
                break;
            }
        }
        return out;
    }

    std::vector<int> position_letter;       // letter index of position p+1
    std::vector<std::set<int>> follow;      // follow set of position p+1

private:
    const Alphabet& alphabet_;
};

}  // namespace detail

/// Minimal DFA of `expr` over `alphabet`: position automaton, subset construction, minimization.
inline Dfa compile(const RegularExpr& expr, const Alphabet& alphabet) {
    detail::Glushkov g(alphabet);
    const auto root = g.visit(expr);
    const int letters = static_cast<int>(alphabet.size());

    // NFA state 0 is the initial state; states 1..m are positions.
    auto successors = [&](int q, int a) {
        std::set<int> out;
        const std::set<int>& from = q == 0 ? root.first : g.follow[q - 1];
        for (int p : from)
            if (g.position_letter[p - 1] == a) out.insert(p);
        return out;
    };
    auto accepting_nfa = [&](int q) { return q == 0 ? root.nullable : root.last.count(q) > 0; };

    std::map<std::set<int>, int> index;
    std::vector<std::set<int>> subsets;
    std::vector<std::vector<State>> delta;
    std::vector<bool> accepting;
    auto intern = [&](const std::set<int>& s) {
        auto [it, fresh] = index.emplace(s, static_cast<int>(subsets.size()));
        if (fresh) {
            subsets.push_back(s);
            accepting.push_back(std::any_of(s.begin(), s.end(), accepting_nfa));
            delta.emplace_back(letters, -1);
        }
        return it->second;
    };
    intern({0});
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (int a = 0; a < letters; ++a) {
            std::set<int> target;
            for (int q : subsets[i]) {
                auto s = successors(q, a);
                target.insert(s.begin(), s.end());
            }
            const int t = intern(target);
            delta[i][a] = t;
        }
    }
    return Dfa::make(alphabet, static_cast<int>(subsets.size()), 0, accepting, delta);
}

inline Dfa compile(std::string_view regex, const Alphabet& alphabet) {
    return compile(parse_regex(regex, alphabet), alphabet);
}

inline bool accepts(const Dfa& d, const Word& w) { return d.accepts(w); }

inline Dfa complement(const Dfa& d) {
    std::vector<bool> acc(d.accepting());
    acc.flip();
    return Dfa::make(d.alphabet(), d.state_count(), 0, acc, d.delta());
}

namespace detail {

template <typename Combine>
Dfa product(const Dfa& l, const Dfa& r, Combine combine) {
    if (l.alphabet() != r.alphabet()) throw AlphabetMismatch();
    const int letters = static_cast<int>(l.alphabet().size());
    std::map<std::pair<State, State>, int> index;
    std::vector<std::pair<State, State>> pairs;
    auto intern = [&](std::pair<State, State> p) {
        auto [it, fresh] = index.emplace(p, static_cast<int>(pairs.size()));
        if (fresh) pairs.push_back(p);
        return it->second;
    };
    intern({0, 0});
    std::vector<std::vector<State>> delta;
    std::vector<bool> accepting;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [p, q] = pairs[i];
        std::vector<State> row(letters);
        for (int a = 0; a < letters; ++a) row[a] = intern({l.next(p, a), r.next(q, a)});
        delta.push_back(std::move(row));
        accepting.push_back(combine(l.is_accepting(p), r.is_accepting(q)));
    }
    return Dfa::make(l.alphabet(), static_cast<int>(pairs.size()), 0, accepting, delta);
}

}  // namespace detail

inline Dfa intersect(const Dfa& l, const Dfa& r) {
    return detail::product(l, r, [](bool a, bool b) { return a && b; });
}

inline Dfa unite(const Dfa& l, const Dfa& r) {
    return detail::product(l, r, [](bool a, bool b) { return a || b; });
}

/// Same language. Both automata are canonical, so this is member-wise equality.
inline bool equivalent(const Dfa& l, const Dfa& r) {
    if (l.alphabet() != r.alphabet()) throw AlphabetMismatch();
    return l == r;
}

}  // namespace sigma2
