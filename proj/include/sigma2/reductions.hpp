#pragma once

#include "sigma2/block_word.hpp"
#include "sigma2/error.hpp"
#include "sigma2/monoid.hpp"
#include "sigma2/subword.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigma2 {

/// b becomes c, then a b is inserted after each block of r letters.
inline std::string expansion(std::string_view w) {
    const int r = block_size(w.size());
    detail::check_ab(w);
    std::string out;
    out.reserve(w.size() + static_cast<std::size_t>(r));
    for (std::size_t i = 0; i < w.size(); ++i) {
        out += w[i] == 'b' ? 'c' : 'a';
        if ((i + 1) % static_cast<std::size_t>(r) == 0) out += 'b';
    }
    return out;
}

/// x = x_1 y_1 ... x_t y_t and y = y_1 ... y_t, read off a subword witness.
struct SubwordFactorization {
    std::vector<Element> x;
    std::vector<Element> y;
    Element identity = 0;
    SubwordWitness source;

    int t() const { return static_cast<int>(x.size()); }
};

/// Gaps of the embedding become the x_i, embedded letters the y_i; a trailing gap (or an empty
/// embedding) adds a last pair with y = 1.
inline SubwordFactorization factorize_subword_witness(const FiniteMonoid& m, const SubwordWitness& w) {
    const int len = static_cast<int>(w.word.size());
    int prev = 0;
    for (int e : w.embedding) {
        if (e <= prev || e > len) throw InvalidArgument("embedding must be strictly increasing within the word");
        prev = e;
    }
    SubwordFactorization f;
    f.identity = m.identity();
    f.source = w;
    prev = 0;
    for (int e : w.embedding) {
        f.x.push_back(m.evaluate(Word(w.word.begin() + prev, w.word.begin() + (e - 1))));
        f.y.push_back(m.image(w.word[e - 1]));
        prev = e;
    }
    if (prev < len || w.embedding.empty()) {
        f.x.push_back(m.evaluate(Word(w.word.begin() + prev, w.word.end())));
        f.y.push_back(m.identity());
    }

    std::vector<Element> interleaved;
    for (int j = 0; j < f.t(); ++j) {
        interleaved.push_back(f.x[j]);
        interleaved.push_back(f.y[j]);
    }
    if (m.product(interleaved) != m.evaluate(w.word) || m.product(f.y) != m.evaluate(w.subword()))
        throw std::logic_error("factorization does not re-evaluate to the witness pair");
    return f;
}

/// Word over the element alphabet of a monoid; `monoid_ref` names that monoid in reports.
struct MonoidWord {
    std::string monoid_ref;
    std::vector<Element> elements;

    std::size_t size() const { return elements.size(); }
    Word symbols() const {
        Word out;
        for (Element e : elements) out.push_back(FiniteMonoid::element_name(e));
        return out;
    }
    Element evaluate(const FiniteMonoid& m) const { return m.product(elements); }

    friend bool operator==(const MonoidWord&, const MonoidWord&) = default;
};

inline MonoidWord& append(MonoidWord& into, const MonoidWord& w) {
    into.elements.insert(into.elements.end(), w.elements.begin(), w.elements.end());
    return into;
}

/// Product over j of 1^{i-1} x_j 1^{r-i} y_j; length t(r+1).
inline MonoidWord build_x_i(int i, int r, const SubwordFactorization& f) {
    if (r < 1 || i < 1 || i > r) throw InvalidArgument("x^(i) needs 1 <= i <= r");
    MonoidWord out;
    for (int j = 0; j < f.t(); ++j) {
        out.elements.insert(out.elements.end(), i - 1, f.identity);
        out.elements.push_back(f.x[j]);
        out.elements.insert(out.elements.end(), r - i, f.identity);
        out.elements.push_back(f.y[j]);
    }
    return out;
}

/// Product over j of 1^r y_j; length t(r+1).
inline MonoidWord build_y(int r, const SubwordFactorization& f) {
    if (r < 1) throw InvalidArgument("r must be positive");
    MonoidWord out;
    for (int j = 0; j < f.t(); ++j) {
        out.elements.insert(out.elements.end(), r, f.identity);
        out.elements.push_back(f.y[j]);
    }
    return out;
}

namespace detail {

inline void check_indices(std::span<const int> indices) {
    const int r = static_cast<int>(indices.size());
    if (r < 1) throw InvalidArgument("index list is empty");
    for (int i : indices)
        if (i < 1 || i > r) throw InvalidArgument("index " + std::to_string(i) + " outside [1, " + std::to_string(r) + "]");
}

}  // namespace detail

/// x^(1) · x^(i_1) ... x^(i_r) · x^(1).
inline MonoidWord t_good(std::span<const int> indices, const SubwordFactorization& f) {
    detail::check_indices(indices);
    const int r = static_cast<int>(indices.size());
    MonoidWord out = build_x_i(1, r, f);
    for (int i : indices) append(out, build_x_i(i, r, f));
    return append(out, build_x_i(1, r, f));
}

/// t_good with the j-th inner segment replaced by the y-word.
inline MonoidWord t_bad(std::span<const int> indices, int j, const SubwordFactorization& f) {
    detail::check_indices(indices);
    const int r = static_cast<int>(indices.size());
    if (j < 1 || j > r) throw InvalidArgument("block index outside [1, r]");
    MonoidWord out = build_x_i(1, r, f);
    for (int b = 1; b <= r; ++b) append(out, b == j ? build_y(r, f) : build_x_i(indices[b - 1], r, f));
    return append(out, build_x_i(1, r, f));
}

/// Block with its a at offset i becomes x^(i), an all-b block becomes the y-word; the whole is
/// sandwiched by x^(1). Length t(r+1)(r+2).
inline MonoidWord wiring(std::string_view w, const SubwordFactorization& f) {
    const PackedWord p = pack(w);
    const int r = p.length();
    MonoidWord out = build_x_i(1, r, f);
    for (int c : p.contents) append(out, c == PackedWord::kBottom ? build_y(r, f) : build_x_i(c, r, f));
    return append(out, build_x_i(1, r, f));
}

struct AnnotatedSymbol {
    Symbol symbol;
    std::vector<int> moduli;

    friend bool operator==(const AnnotatedSymbol&, const AnnotatedSymbol&) = default;
};

/// Position i (1-indexed) carries its letter and the moduli dividing i.
inline std::vector<AnnotatedSymbol> p_annotate(const Word& w, std::vector<int> moduli) {
    if (moduli.empty()) throw InvalidArgument("moduli must be nonempty");
    for (int p : moduli)
        if (p <= 0) throw InvalidArgument("moduli must be positive; got " + std::to_string(p));
    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
    std::vector<AnnotatedSymbol> out;
    for (std::size_t i = 1; i <= w.size(); ++i) {
        AnnotatedSymbol a{w[i - 1], {}};
        for (int p : moduli)
            if (i % static_cast<std::size_t>(p) == 0) a.moduli.push_back(p);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace sigma2
