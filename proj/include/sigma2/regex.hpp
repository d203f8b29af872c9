#pragma once

#include "sigma2/error.hpp"
#include "sigma2/word.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <string_view>

namespace sigma2 {

enum class RegexKind { empty, epsilon, letter, alternation, concatenation, star };

/// Immutable regular-expression AST. Nodes are shared, so copies are cheap.
///
/// Binary nodes built by the parser nest to the right: `abc` is concat(a, concat(b, c)).
class RegularExpr {
public:
    static RegularExpr empty() { return RegularExpr(make(RegexKind::empty)); }
    static RegularExpr epsilon() { return RegularExpr(make(RegexKind::epsilon)); }
    static RegularExpr letter(Symbol s) {
        auto n = make(RegexKind::letter);
        n->symbol = std::move(s);
        return RegularExpr(std::move(n));
    }
    static RegularExpr alternation(const RegularExpr& l, const RegularExpr& r) {
        return binary(RegexKind::alternation, l, r);
    }
    static RegularExpr concatenation(const RegularExpr& l, const RegularExpr& r) {
        return binary(RegexKind::concatenation, l, r);
    }
    static RegularExpr star(const RegularExpr& e) {
        auto n = make(RegexKind::star);
        n->left = e.node_;
        return RegularExpr(std::move(n));
    }

    RegexKind kind() const { return node_->kind; }
    /// Only meaningful for letters.
    const Symbol& symbol() const { return node_->symbol; }
    /// Operand of a star, or left operand of a binary node.
    RegularExpr left() const { return RegularExpr(node_->left); }
    RegularExpr right() const { return RegularExpr(node_->right); }

    std::size_t size() const { return count(node_.get()); }

    /// Prefix rendering, e.g. `star(union(a, c))`.
    std::string to_string() const { return render(node_.get()); }

    friend bool operator==(const RegularExpr& a, const RegularExpr& b) { return a.to_string() == b.to_string(); }

private:
    struct Node {
        RegexKind kind;
        Symbol symbol;
        std::shared_ptr<const Node> left, right;
    };

    explicit RegularExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<Node> make(RegexKind k) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        return n;
    }
    static RegularExpr binary(RegexKind k, const RegularExpr& l, const RegularExpr& r) {
        auto n = make(k);
        n->left = l.node_;
        n->right = r.node_;
        return RegularExpr(std::move(n));
    }
    static std::size_t count(const Node* n) {
        if (!n) return 0;
        return 1 + count(n->left.get()) + count(n->right.get());
    }
    static std::string render(const Node* n) {
        switch (n->kind) {
            case RegexKind::empty: return "empty";
            case RegexKind::epsilon: return "epsilon";
            case RegexKind::letter: return n->symbol.size() == 1 ? n->symbol : "[" + n->symbol + "]";
            case RegexKind::alternation:
                return "union(" + render(n->left.get()) + ", " + render(n->right.get()) + ")";
            case RegexKind::concatenation:
                return "concat(" + render(n->left.get()) + ", " + render(n->right.get()) + ")";
            case RegexKind::star: return "star(" + render(n->left.get()) + ")";
        }
        return {};
    }

    std::shared_ptr<const Node> node_;
};

namespace detail {

// Grammar (whitespace ignored):
//   union   := concat ('+' concat)*
//   concat  := postfix+
//   postfix := atom '*'*
//   atom    := symbol | '[' name ']' | '(' ')' | '(' union ')'
class RegexParser {
public:
    RegexParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    RegularExpr parse() {
        skip();
        if (pos_ == text_.size()) return RegularExpr::epsilon();
        auto e = parse_union();
        skip();
        if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_atom_start() {
        skip();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return c != '+' && c != '*' && c != ')' && c != ']';
    }

    RegularExpr parse_union() {
        auto first = parse_concat();
        skip();
        if (pos_ < text_.size() && text_[pos_] == '+') {
            ++pos_;
            return RegularExpr::alternation(first, parse_union());
        }
        return first;
    }

    RegularExpr parse_concat() {
        if (!at_atom_start()) throw ParseError(pos_, "expected an operand");
        auto first = parse_postfix();
        if (at_atom_start()) return RegularExpr::concatenation(first, parse_concat());
        return first;
    }

    RegularExpr parse_postfix() {
        auto e = parse_atom();
        skip();
        while (pos_ < text_.size() && text_[pos_] == '*') {
            e = RegularExpr::star(e);
            ++pos_;
            skip();
        }
        return e;
    }

    RegularExpr parse_atom() {
        skip();
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            skip();
            if (pos_ < text_.size() && text_[pos_] == ')') {
                ++pos_;
                return RegularExpr::epsilon();
            }
            auto e = parse_union();
            skip();
            if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return e;
        }
        if (c == '[') {
            const auto close = text_.find(']', pos_);
            if (close == std::string_view::npos) throw ParseError(start, "unterminated '['");
            Symbol name(text_.substr(pos_ + 1, close - pos_ - 1));
            if (name.empty()) throw ParseError(start, "empty symbol name");
            pos_ = close + 1;
            return letter(name);
        }
        ++pos_;
        return letter(Symbol(1, c));
    }

    RegularExpr letter(const Symbol& s) {
        if (!contains_symbol(alphabet_, s)) throw UnknownSymbol(s);
        return RegularExpr::letter(s);
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` over `alphabet`. Empty text denotes the empty word.
inline RegularExpr parse_regex(std::string_view text, const Alphabet& alphabet) {
    return detail::RegexParser(text, alphabet).parse();
}

/// Letters appearing in `text`, sorted (no validation).
inline Alphabet symbols_in(std::string_view text) {
    Alphabet out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        Symbol s;
        if (c == '[') {
            const auto close = text.find(']', i);
            if (close == std::string_view::npos) break;
            s = Symbol(text.substr(i + 1, close - i - 1));
            i = close;
        } else if (c == '(' || c == ')' || c == '+' || c == '*' || std::isspace(static_cast<unsigned char>(c))) {
            continue;
        } else {
            s = Symbol(1, c);
        }
        if (!s.empty() && !contains_symbol(out, s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sigma2
