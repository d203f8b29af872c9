#pragma once

#include "sigma2/error.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sigma2 {

/// Side length r of a block word of length n = r².
inline int block_size(std::size_t n) {
    int r = 0;
    while (static_cast<std::size_t>(r + 1) * (r + 1) <= n) ++r;
    if (static_cast<std::size_t>(r) * r != n) throw InvalidArgument("length " + std::to_string(n) + " is not a perfect square");
    return r;
}

namespace detail {

inline void check_ab(std::string_view w) {
    for (char c : w)
        if (c != 'a' && c != 'b') throw InvalidArgument("block words are over {a,b}; got '" + std::string(1, c) + "'");
}

/// Number of a's in each block.
inline std::vector<int> a_counts(std::string_view w) {
    const int r = block_size(w.size());
    check_ab(w);
    std::vector<int> counts(r, 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == 'a') ++counts[i / r];
    return counts;
}

}  // namespace detail

/// Every block has exactly one a.
inline bool is_good(std::string_view w) {
    for (int c : detail::a_counts(w))
        if (c != 1) return false;
    return true;
}

/// Exactly one block is all b's, every other block has exactly one a.
inline bool is_bad(std::string_view w) {
    int empty = 0;
    for (int c : detail::a_counts(w)) {
        if (c == 0) ++empty;
        else if (c != 1) return false;
    }
    return empty == 1;
}

/// Packed form of a block word: contents[j] is the offset (1..r) of the a in block j+1, or
/// kBottom when that block is all b's.
struct PackedWord {
    static constexpr int kBottom = 0;

    std::vector<int> contents;

    int length() const { return static_cast<int>(contents.size()); }
    /// 1-indexed access.
    int at(int position) const { return contents[position - 1]; }
    bool has_bottom() const {
        for (int c : contents)
            if (c == kBottom) return true;
        return false;
    }

    friend auto operator<=>(const PackedWord&, const PackedWord&) = default;
};

/// Comma-separated form with `_` for the all-b block, e.g. "1,_,2".
inline std::string to_string(const PackedWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.contents.size(); ++i) {
        if (i) out += ',';
        out += w.contents[i] == PackedWord::kBottom ? std::string("_") : std::to_string(w.contents[i]);
    }
    return out;
}

inline PackedWord parse_packed(std::string_view text) {
    PackedWord w;
    if (text.empty()) return w;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        if (token == "_") {
            w.contents.push_back(PackedWord::kBottom);
        } else {
            int v = 0;
            if (token.empty()) throw InvalidArgument("empty packed token");
            for (char c : token) {
                if (c < '0' || c > '9') throw InvalidArgument("bad packed token '" + std::string(token) + "'");
                v = v * 10 + (c - '0');
            }
            if (v == 0) throw InvalidArgument("packed contents are 1-indexed");
            w.contents.push_back(v);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    for (int c : w.contents)
        if (c > w.length()) throw InvalidArgument("packed contents exceed the word length");
    return w;
}

/// Defined on words with at most one a per block.
inline PackedWord pack(std::string_view w) {
    const int r = block_size(w.size());
    detail::check_ab(w);
    PackedWord out;
    out.contents.assign(r, PackedWord::kBottom);
    for (int block = 0; block < r; ++block)
        for (int offset = 1; offset <= r; ++offset)
            if (w[block * r + offset - 1] == 'a') {
                if (out.contents[block] != PackedWord::kBottom)
                    throw InvalidArgument("block " + std::to_string(block + 1) + " has more than one a");
                out.contents[block] = offset;
            }
    return out;
}

inline std::string unpack(const PackedWord& p) {
    const int r = p.length();
    std::string out(static_cast<std::size_t>(r) * r, 'b');
    for (int block = 0; block < r; ++block) {
        const int c = p.contents[block];
        if (c < 0 || c > r) throw InvalidArgument("packed contents out of range");
        if (c != PackedWord::kBottom) out[block * r + c - 1] = 'a';
    }
    return out;
}

/// 1-indexed positions of the a's.
inline std::vector<int> tau(std::string_view w) {
    std::vector<int> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == 'a') out.push_back(static_cast<int>(i) + 1);
    return out;
}

/// All r^r packed good words of length r, in lexicographic order.
inline std::vector<PackedWord> enumerate_packed_good(int r) {
    if (r <= 0) throw InvalidArgument("block size must be positive");
    std::vector<PackedWord> out;
    PackedWord cur{std::vector<int>(r, 1)};
    while (true) {
        out.push_back(cur);
        int j = r - 1;
        while (j >= 0 && cur.contents[j] == r) cur.contents[j--] = 1;
        if (j < 0) break;
        ++cur.contents[j];
    }
    return out;
}

/// good_n in lexicographic order of packed forms.
inline std::vector<std::string> enumerate_good(int n) {
    std::vector<std::string> out;
    for (const auto& p : enumerate_packed_good(block_size(static_cast<std::size_t>(n)))) out.push_back(unpack(p));
    return out;
}

/// bad_n: every good word with one block blanked, ordered by blanked block then packed form.
inline std::vector<std::string> enumerate_bad(int n) {
    const int r = block_size(static_cast<std::size_t>(n));
    std::vector<std::string> out;
    if (r == 0) return out;
    for (int j = 0; j < r; ++j)
        for (auto p : enumerate_packed_good(r)) {
            if (p.contents[j] != 1) continue;
            p.contents[j] = PackedWord::kBottom;
            out.push_back(unpack(p));
        }
    return out;
}

inline std::vector<PackedWord> pack_all(const std::vector<std::string>& words) {
    std::vector<PackedWord> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(pack(w));
    return out;
}

inline std::vector<std::string> unpack_all(const std::vector<PackedWord>& words) {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(unpack(w));
    return out;
}

}  // namespace sigma2
