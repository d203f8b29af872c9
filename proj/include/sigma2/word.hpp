#pragma once

#include "sigma2/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace sigma2 {

/// A letter. Multi-character names are allowed so that monoid elements can serve as letters.
using Symbol = std::string;
using Alphabet = std::vector<Symbol>;
using Word = std::vector<Symbol>;

inline bool contains_symbol(const Alphabet& alphabet, const Symbol& s) {
    return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
}

/// Splits `text` into symbols of `alphabet`.
///
/// Text containing whitespace is split on whitespace, one symbol per token. Otherwise every
/// character is a symbol, except that `[name]` denotes the multi-character symbol `name`.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
    Word out;
    const bool spaced = std::any_of(text.begin(), text.end(),
                                    [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    auto push = [&](std::string s) {
        if (s.size() > 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
        if (!contains_symbol(alphabet, s)) throw UnknownSymbol(s);
        out.push_back(std::move(s));
    };
    if (spaced) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
            if (j > i) push(std::string(text.substr(i, j - i)));
            i = j;
        }
        return out;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '[') {
            const auto close = text.find(']', i);
            if (close == std::string_view::npos) throw ParseError(i, "unterminated '['");
            push(std::string(text.substr(i + 1, close - i - 1)));
            i = close;
        } else {
            push(std::string(1, text[i]));
        }
    }
    return out;
}

/// Inverse of parse_word: single-character symbols are concatenated, longer ones bracketed.
inline std::string render_word(const Word& w) {
    std::string out;
    for (const auto& s : w) {
        if (s.size() == 1) out += s;
        else out += "[" + s + "]";
    }
    return out;
}

/// Convenience for single-character alphabets: one symbol per character, no validation.
inline Word chars(std::string_view text) {
    Word out;
    out.reserve(text.size());
    for (char c : text) out.emplace_back(1, c);
    return out;
}

inline Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace sigma2
