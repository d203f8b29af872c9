#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace sigma2;

namespace {

const Alphabet kAbc{"a", "b", "c"};
const std::string kK = "(ac*b+c)*";
const std::string kAll = "(a+b+c)*";

}  // namespace

TEST_CASE("parse_regex builds the expected trees") {
    CHECK(parse_regex(kK, kAbc).to_string() == "star(union(concat(a, concat(star(c), b)), c))");
    CHECK(parse_regex("", kAbc).kind() == RegexKind::epsilon);
    CHECK(parse_regex("()", kAbc).kind() == RegexKind::epsilon);
    CHECK(parse_regex("(a(ac*b+c)*b+c)*", kAbc).to_string() ==
          "star(union(concat(a, concat(star(union(concat(a, concat(star(c), b)), c)), b)), c))");
    CHECK(parse_regex("[x1][y2]*", {"x1", "y2"}).to_string() == "concat([x1], star([y2]))");
}

TEST_CASE("parse_regex reports positions and unknown symbols") {
    try {
        parse_regex("(ab", kAbc);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(parse_regex("a+*", kAbc), ParseError);
    CHECK_THROWS_AS(parse_regex("ad", kAbc), UnknownSymbol);
    CHECK_THROWS_AS(parse_regex("[zz]", kAbc), UnknownSymbol);
}

TEST_CASE("compile handles the small corner cases") {
    const auto eps = compile("", {"a"});
    CHECK(eps.state_count() == 2);
    CHECK(eps.accepts({}));
    CHECK_FALSE(eps.accepts({"a"}));

    const auto astar = compile("a*", {"a", "b"});
    CHECK(astar.state_count() == 2);

    const auto none = compile(RegularExpr::empty(), {"a"});
    CHECK(none.empty_language());
    CHECK(none.state_count() == 1);
}

TEST_CASE("K compiles to a minimal DFA matching the regex on short words") {
    const auto d = compile(kK, kAbc);
    const auto expr = parse_regex(kK, kAbc);
    CHECK(d.state_count() == 3);
    CHECK(oracle::is_minimal(d));
    for (const auto& w : oracle::all_words(kAbc, 6)) REQUIRE(d.accepts(w) == oracle::matches(expr, w));

    CHECK(d.accepts(chars("acb")));
    CHECK(d.accepts({}));
    CHECK_FALSE(d.accepts(chars("ba")));
    CHECK_THROWS_AS(d.accepts(chars("ad")), UnknownSymbol);
}

TEST_CASE("boolean operations and equivalence") {
    const auto k = compile(kK, kAbc);
    CHECK(intersect(k, complement(k)).empty_language());
    CHECK(equivalent(k, k));
    CHECK(equivalent(unite(k, complement(k)), compile(kAll, kAbc)));
    CHECK_FALSE(equivalent(k, complement(k)));
    CHECK_THROWS_AS(equivalent(k, compile("a*", {"a"})), AlphabetMismatch);
    CHECK_THROWS_AS(equivalent(k, compile(kK, {"c", "b", "a"})), AlphabetMismatch);
}

TEST_CASE("the four-term union describes the complement of the depth-2 Dyck language") {
    const auto d = compile("(a(ac*b+c)*b+c)*", kAbc);
    const auto union_of_terms =
        compile(kK + "b" + kAll + "+" + kAll + "bc*b" + kK + "b" + kAll + "+" + kAll + "a" + kK + "+" + kAll + "a" +
                    kK + "ac*a" + kAll,
                kAbc);
    CHECK(equivalent(complement(d), union_of_terms));
    CHECK_FALSE(equivalent(d, union_of_terms));
    CHECK(d.accepts({}));
    CHECK_FALSE(union_of_terms.accepts({}));
}

TEST_CASE("random regexes agree with the recursive matcher") {
    const Alphabet ab{"a", "b"};
    std::mt19937_64 rng(20240601);
    const auto words = oracle::all_words(ab, 6);
    for (int sample = 0; sample < 300; ++sample) {
        const int size = std::uniform_int_distribution<int>(1, 8)(rng);
        const auto expr = oracle::random_regex(ab, size, rng);
        const auto d = compile(expr, ab);
        INFO(expr.to_string());
        REQUIRE(oracle::is_minimal(d));
        REQUIRE(Dfa::make(d.alphabet(), d.state_count(), 0, d.accepting(), d.delta()) == d);
        for (const auto& w : words) REQUIRE(d.accepts(w) == oracle::matches(expr, w));
    }
}

TEST_CASE("equivalence is an equivalence relation consistent with brute force") {
    const Alphabet ab{"a", "b"};
    std::mt19937_64 rng(77);
    std::vector<Dfa> corpus;
    for (int i = 0; i < 40; ++i) corpus.push_back(compile(oracle::random_regex(ab, 1 + i % 6, rng), ab));
    const auto words = oracle::all_words(ab, 6);
    const auto same_on_words = [&](const Dfa& x, const Dfa& y) {
        for (const auto& w : words)
            if (x.accepts(w) != y.accepts(w)) return false;
        return true;
    };
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            const bool eq = equivalent(corpus[i], corpus[j]);
            REQUIRE(eq == equivalent(corpus[j], corpus[i]));
            if (eq) REQUIRE(same_on_words(corpus[i], corpus[j]));
            if (!same_on_words(corpus[i], corpus[j])) REQUIRE_FALSE(eq);
            for (std::size_t l = 0; l < corpus.size(); l += 7)
                if (eq && equivalent(corpus[j], corpus[l])) REQUIRE(equivalent(corpus[i], corpus[l]));
        }
}

TEST_CASE("non-minimal DFAs are minimized on construction") {
    // Two copies of the same two-state automaton for a*.
    const auto d = Dfa::make({"a", "b"}, 4, 0, {true, false, true, false}, {{2, 1}, {1, 1}, {0, 3}, {3, 3}});
    CHECK(d.state_count() == 2);
    CHECK(equivalent(d, compile("a*", {"a", "b"})));
    CHECK_THROWS_AS(Dfa::make({"a"}, 2, 0, {true, false}, {{1}}), InvalidArgument);
}

TEST_CASE("DFA JSON round-trips") {
    const auto d = compile(kK, kAbc);
    const auto j = dfa_to_json(d);
    CHECK(j.at("delta").size() == 3);
    CHECK(dfa_from_json(j) == d);
}
