#pragma once

#include "sigma2/monoid.hpp"

#include <utility>
#include <vector>

namespace sigma2 {

/// A word over the source alphabet together with the 1-indexed positions of an embedded subword.
struct SubwordWitness {
    Word word;
    std::vector<int> embedding;

    Word subword() const {
        Word out;
        for (int p : embedding) out.push_back(word[p - 1]);
        return out;
    }

    friend bool operator==(const SubwordWitness&, const SubwordWitness&) = default;
};

/// Pairs (x, y) such that some word evaluating to x has a scattered subword evaluating to y.
///
/// Computed as the closure of (1,1), (h(a),h(a)), (h(a),1) under componentwise product, by a
/// breadth-first search that appends one letter at a time. Letters are tried in alphabet order,
/// keeping the letter in the subword before skipping it, so every pair gets the least witness
/// for (length, then that choice sequence).
class SubwordRelation {
public:
    explicit SubwordRelation(const FiniteMonoid& m) : size_(m.size()) {
        const std::size_t cells = static_cast<std::size_t>(size_) * size_;
        parent_.assign(cells, -1);
        letter_.assign(cells, -1);
        kept_.assign(cells, 0);
        present_.assign(cells, 0);
        const auto& gens = m.generators();

        const int start = cell(m.identity(), m.identity());
        present_[start] = 1;
        order_.push_back(start);
        for (std::size_t head = 0; head < order_.size(); ++head) {
            const int c = order_[head];
            const Element x = c / size_, y = c % size_;
            for (int a = 0; a < static_cast<int>(gens.size()); ++a) {
                const Element g = gens[a].second;
                for (bool keep : {true, false}) {
                    const int next = cell(m.multiply(x, g), keep ? m.multiply(y, g) : y);
                    if (present_[next]) continue;
                    present_[next] = 1;
                    parent_[next] = c;
                    letter_[next] = a;
                    kept_[next] = keep;
                    order_.push_back(next);
                }
            }
        }
        symbols_ = m.alphabet();
    }

    bool contains(Element x, Element y) const {
        if (x < 0 || y < 0 || x >= size_ || y >= size_) return false;
        return present_[cell(x, y)] != 0;
    }

    std::size_t pair_count() const { return order_.size(); }

    /// All pairs, in discovery order.
    std::vector<std::pair<Element, Element>> pairs() const {
        std::vector<std::pair<Element, Element>> out;
        out.reserve(order_.size());
        for (int c : order_) out.emplace_back(c / size_, c % size_);
        return out;
    }

    /// Subword partners of x, ascending.
    std::vector<Element> subwords_of(Element x) const {
        std::vector<Element> out;
        for (Element y = 0; y < size_; ++y)
            if (contains(x, y)) out.push_back(y);
        return out;
    }

    SubwordWitness witness(Element x, Element y) const {
        if (!contains(x, y)) throw InvalidArgument("pair is not in the subword relation");
        std::vector<int> path;
        for (int c = cell(x, y); parent_[c] >= 0; c = parent_[c]) path.push_back(c);
        SubwordWitness w;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            w.word.push_back(symbols_[letter_[*it]]);
            if (kept_[*it]) w.embedding.push_back(static_cast<int>(w.word.size()));
        }
        return w;
    }

private:
    int cell(Element x, Element y) const { return x * size_ + y; }

    int size_;
    std::vector<int> parent_, letter_;
    std::vector<char> kept_, present_;
    std::vector<int> order_;
    Alphabet symbols_;
};

inline SubwordRelation subword_relation(const FiniteMonoid& m) { return SubwordRelation(m); }

}  // namespace sigma2
