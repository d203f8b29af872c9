#pragma once

#include "sigma2/block_word.hpp"
#include "sigma2/error.hpp"
#include "sigma2/klimit.hpp"
#include "sigma2/word.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigma2 {

/// "Input position `position` (0-indexed) carries `letter`."
struct Literal {
    int position = 0;
    Symbol letter;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Layered OR∘AND∘OR circuit: top ORs over literals, ANDs over top gates, one bottom OR over ANDs.
class Sigma2Circuit {
public:
    Sigma2Circuit(int n, Alphabet alphabet, int k, std::vector<std::vector<Literal>> top,
                  std::vector<std::vector<int>> ands, std::vector<int> bottom)
        : n_(n), alphabet_(std::move(alphabet)), k_(k), top_(std::move(top)), ands_(std::move(ands)),
          bottom_(std::move(bottom)) {
        if (n_ < 0) throw InvalidArgument("circuit input length must be nonnegative");
        if (k_ < 0) throw InvalidArgument("top fan-in must be nonnegative");
        for (std::size_t g = 0; g < top_.size(); ++g) {
            if (static_cast<int>(top_[g].size()) > k_)
                throw InvalidArgument("top gate " + std::to_string(g) + " has fan-in " +
                                      std::to_string(top_[g].size()) + " > k = " + std::to_string(k_));
            for (const auto& lit : top_[g]) {
                if (lit.position < 0 || lit.position >= n_)
                    throw InvalidArgument("literal position " + std::to_string(lit.position) + " out of range");
                if (!contains_symbol(alphabet_, lit.letter)) throw UnknownSymbol(lit.letter);
            }
        }
        for (const auto& gate : ands_)
            for (int t : gate)
                if (t < 0 || t >= static_cast<int>(top_.size()))
                    throw InvalidArgument("AND gate refers to missing top gate " + std::to_string(t));
        for (int a : bottom_)
            if (a < 0 || a >= static_cast<int>(ands_.size()))
                throw InvalidArgument("bottom OR refers to missing AND gate " + std::to_string(a));
    }

    int n() const { return n_; }
    const Alphabet& alphabet() const { return alphabet_; }
    int k() const { return k_; }
    const std::vector<std::vector<Literal>>& top() const { return top_; }
    const std::vector<std::vector<int>>& ands() const { return ands_; }
    const std::vector<int>& bottom() const { return bottom_; }
    /// Total gate count.
    int size() const { return static_cast<int>(top_.size() + ands_.size()) + 1; }

    bool top_value(int gate, const Word& w) const {
        for (const auto& lit : top_[gate])
            if (w[lit.position] == lit.letter) return true;
        return false;
    }

    bool and_value(int gate, const Word& w) const {
        check_input(w);
        for (int t : ands_[gate])
            if (!top_value(t, w)) return false;
        return true;
    }

    void check_input(const Word& w) const {
        if (static_cast<int>(w.size()) != n_)
            throw InvalidArgument("input has length " + std::to_string(w.size()) + ", circuit expects " +
                                  std::to_string(n_));
    }

private:
    int n_;
    Alphabet alphabet_;
    int k_;
    std::vector<std::vector<Literal>> top_;
    std::vector<std::vector<int>> ands_;
    std::vector<int> bottom_;
};

inline bool eval_circuit(const Sigma2Circuit& c, const Word& w) {
    c.check_input(w);
    for (int a : c.bottom())
        if (c.and_value(a, w)) return true;
    return false;
}

inline bool eval_circuit(const Sigma2Circuit& c, std::string_view w) { return eval_circuit(c, chars(w)); }

/// Accepts exactly good_n: one AND per good word over 2n single-literal top gates.
inline Sigma2Circuit circuit_for_good(int n) {
    const int r = block_size(static_cast<std::size_t>(n));
    if (r > 3) throw InvalidArgument("circuit_for_good is limited to r <= 3");
    std::vector<std::vector<Literal>> top;
    for (int pos = 0; pos < n; ++pos) {
        top.push_back({{pos, "a"}});
        top.push_back({{pos, "b"}});
    }
    std::vector<std::vector<int>> ands;
    std::vector<int> bottom;
    for (const auto& w : enumerate_good(n)) {
        std::vector<int> gate;
        for (int pos = 0; pos < n; ++pos) gate.push_back(2 * pos + (w[pos] == 'b' ? 1 : 0));
        bottom.push_back(static_cast<int>(ands.size()));
        ands.push_back(std::move(gate));
    }
    return Sigma2Circuit(n, {"a", "b"}, 1, std::move(top), std::move(ands), std::move(bottom));
}

/// One AND with no inputs: accepts everything.
inline Sigma2Circuit accept_all_circuit(int n) {
    return Sigma2Circuit(n, {"a", "b"}, 1, {}, {{}}, {0});
}

/// OR over r ANDs, the j-th testing "a at position j" of the first block.
inline Sigma2Circuit block_selector_circuit(int n) {
    const int r = block_size(static_cast<std::size_t>(n));
    std::vector<std::vector<Literal>> top;
    std::vector<std::vector<int>> ands;
    std::vector<int> bottom;
    for (int j = 0; j < r; ++j) {
        top.push_back({{j, "a"}});
        ands.push_back({j});
        bottom.push_back(j);
    }
    return Sigma2Circuit(n, {"a", "b"}, 1, std::move(top), std::move(ands), std::move(bottom));
}

struct DenseGate {
    int gate = 0;
    std::vector<std::string> family;
};

/// The AND gate of the bottom OR accepting the most words of L′ (lowest index on ties).
inline DenseGate densest_and_gate(const Sigma2Circuit& c, std::span<const std::string> language) {
    std::vector<std::vector<std::string>> accepted(c.bottom().size());
    for (const auto& w : language) {
        const Word word = chars(w);
        bool any = false;
        for (std::size_t j = 0; j < c.bottom().size(); ++j)
            if (c.and_value(c.bottom()[j], word)) {
                accepted[j].push_back(w);
                any = true;
            }
        if (!any) throw PreconditionViolated("circuit rejects '" + w + "'");
    }
    if (accepted.empty()) throw PreconditionViolated("circuit has no AND gates");
    std::size_t best = 0;
    for (std::size_t j = 1; j < accepted.size(); ++j)
        if (accepted[j].size() > accepted[best].size()) best = j;
    return {c.bottom()[best], std::move(accepted[best])};
}

/// Returns a k-limit of F, or nullopt when the oracle's hypothesis does not hold for F.
using LimitOracle = std::function<std::optional<std::string>(std::span<const std::string>, int)>;

struct AdversaryResult {
    int gate = 0;
    std::vector<std::string> family;
    bool hypothesis_met = false;
    std::optional<std::string> word;
    bool outside_language = false;
    bool is_limit = false;
    bool accepted = false;
};

/// Finds a word outside L accepted by c: a k-limit of the words of L′ accepted by the densest
/// AND gate. Every returned word is checked; a failed check is a bug and throws.
inline AdversaryResult adversary(const Sigma2Circuit& c, std::span<const std::string> language, int k,
                                 const LimitOracle& oracle,
                                 const std::function<bool(const std::string&)>& not_in_language) {
    if (c.k() > k) throw PreconditionViolated("circuit top fan-in exceeds k");
    auto dense = densest_and_gate(c, language);
    AdversaryResult out;
    out.gate = dense.gate;
    out.family = std::move(dense.family);
    out.word = oracle(out.family, k);
    if (!out.word) return out;
    out.hypothesis_met = true;
    out.outside_language = not_in_language(*out.word);
    out.is_limit = is_k_limit(*out.word, out.family, k);
    out.accepted = eval_circuit(c, *out.word);
    if (!out.outside_language || !out.is_limit || !out.accepted)
        throw std::logic_error("adversary word '" + *out.word + "' failed verification");
    return out;
}

}  // namespace sigma2
