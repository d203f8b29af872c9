#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace sigma2;

namespace {

const Alphabet kAbc{"a", "b", "c"};
const std::string kK = "(ac*b+c)*";
const std::string kAll = "(a+b+c)*";
const std::string kKPrime = kK + "bc*b" + kAll;
const std::string kDyck2 = "(a(ac*b+c)*b+c)*";

Element eval(const Recognition& r, const std::string& w) { return r.monoid().evaluate(chars(w)); }

/// Six states, letters generating the full transformation monoid on them.
Dfa full_transformation_dfa() {
    std::vector<std::vector<State>> delta(6, std::vector<State>(3));
    for (State q = 0; q < 6; ++q) {
        delta[q][0] = (q + 1) % 6;
        delta[q][1] = q == 0 ? 1 : q == 1 ? 0 : q;
        delta[q][2] = q == 0 ? 1 : q;
    }
    return Dfa::make(kAbc, 6, 0, {true, false, false, false, false, false}, delta);
}

}  // namespace

TEST_CASE("transition monoids of small languages") {
    CHECK(transition_monoid(compile(kAll, kAbc)).monoid.size() == 1);

    const auto even = transition_monoid(compile("(aa)*", {"a"})).monoid;
    REQUIRE(even.size() == 2);
    const Element a = even.image("a");
    CHECK(a != even.identity());
    CHECK(even.multiply(a, a) == even.identity());

    const auto has_a = transition_monoid(compile("(a+b)*a(a+b)*", {"a", "b"})).monoid;
    REQUIRE(has_a.size() == 2);
    const Element z = has_a.image("a");
    CHECK(has_a.image("b") == has_a.identity());
    for (Element e = 0; e < 2; ++e) CHECK(has_a.multiply(z, e) == z);

    CHECK(transition_monoid(compile(kK, kAbc)).monoid.size() == 6);
}

TEST_CASE("the monoid size guard") {
    CHECK_THROWS_AS(transition_monoid(full_transformation_dfa()), MonoidTooLarge);
    CHECK_THROWS_AS(classify(full_transformation_dfa()), MonoidTooLarge);
}

TEST_CASE("FiniteMonoid rejects malformed tables") {
    CHECK_THROWS_AS(FiniteMonoid({{0, 1, 2}, {1, 2, 2}, {2, 1, 2}}, 0, {{"a", 1}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteMonoid({{0, 1}, {1, 0}}, 0, {}), InvalidArgument);
    CHECK_THROWS_AS(FiniteMonoid({{0, 1}, {0, 1}}, 0, {{"a", 1}}), InvalidArgument);
}

TEST_CASE("syntactic order examples") {
    const auto trivial = recognize(compile(kAll, kAbc));
    CHECK(trivial.size() == 1);
    CHECK(trivial.leq(0, 0));

    const auto has_a = recognize(compile("(a+b)*a(a+b)*", {"a", "b"}));
    const Element one = has_a.monoid().identity(), z = has_a.monoid().image("a");
    CHECK(has_a.leq(one, z));
    CHECK_FALSE(has_a.leq(z, one));
    CHECK(has_a.separating_context(z, one) == std::pair<Element, Element>{one, one});

    const auto k = recognize(compile(kK, kAbc));
    const Element abab = eval(k, "abab"), longer = eval(k, "ababbaabab");
    CHECK_FALSE(k.leq(abab, longer));
    CHECK(k.in_accepting(abab));
    CHECK_FALSE(k.in_accepting(longer));
}

TEST_CASE("a monoid with indistinguishable elements has no syntactic order") {
    const FiniteMonoid z2({{0, 1}, {1, 0}}, 0, {{"a", 1}});
    CHECK_THROWS_AS(syntactic_order(z2, {true, true}), InvalidArgument);
}

TEST_CASE("ordered monoid invariants and the upper-set property") {
    for (const auto& regex : {kK, kKPrime, kDyck2, kAll, std::string("a*b*c*"), std::string("(ab+c)*a")}) {
        const auto r = recognize(compile(regex, kAbc));
        INFO(regex);
        REQUIRE_NOTHROW(r.ordered().validate());
        REQUIRE(r.accepting_is_upper_set());
        REQUIRE(r.complement().accepting_is_upper_set());
        REQUIRE_NOTHROW(r.complement().ordered().validate());
    }
}

TEST_CASE("syntactic order agrees with word contexts") {
    for (const auto& regex : {kK, kKPrime, kDyck2}) {
        const auto d = compile(regex, kAbc);
        const auto r = recognize(d);
        const auto& m = r.monoid();
        INFO(regex);
        for (Element s = 0; s < m.size(); ++s)
            for (Element t = 0; t < m.size(); ++t) {
                const auto& u = m.representative(s);
                const auto& v = m.representative(t);
                if (r.leq(s, t)) {
                    REQUIRE(oracle::context_leq(d, u, v, 3));
                } else {
                    const auto ctx = r.separating_context(s, t);
                    REQUIRE(ctx);
                    const auto& p = m.representative(ctx->first);
                    const auto& q = m.representative(ctx->second);
                    REQUIRE(d.accepts(concat(concat(p, u), q)));
                    REQUIRE_FALSE(d.accepts(concat(concat(p, v), q)));
                }
            }
    }
}

TEST_CASE("recognition is sound on random words") {
    std::mt19937_64 rng(99);
    for (const auto& regex : {kK, kKPrime, kDyck2}) {
        const auto d = compile(regex, kAbc);
        const auto expr = parse_regex(regex, kAbc);
        const auto r = recognize(d);
        for (int i = 0; i < 1000; ++i) {
            const auto w = oracle::random_word(kAbc, 8, rng);
            REQUIRE(r.accepts(w) == d.accepts(w));
            REQUIRE(r.accepts(w) == oracle::matches(expr, w));
        }
    }
}

TEST_CASE("subword relation examples") {
    const auto has_a = transition_monoid(compile("(a+b)*a(a+b)*", {"a", "b"})).monoid;
    const auto sw = subword_relation(has_a);
    const Element one = has_a.identity(), z = has_a.image("a");
    CHECK(sw.pair_count() == 3);
    CHECK(sw.contains(one, one));
    CHECK(sw.contains(z, one));
    CHECK(sw.contains(z, z));
    CHECK_FALSE(sw.contains(one, z));

    const auto km = transition_monoid(compile(kK, kAbc)).monoid;
    const auto ksw = subword_relation(km);
    const Element x = km.evaluate(chars("abab")), y = km.evaluate(chars("ba"));
    CHECK(ksw.contains(x, y));
    const SubwordWitness paper{chars("abab"), {2, 3}};
    CHECK(km.evaluate(paper.word) == x);
    CHECK(km.evaluate(paper.subword()) == y);
    CHECK(ksw.pair_count() == 31);
}

TEST_CASE("subword relation matches brute force and is closed under product") {
    std::vector<FiniteMonoid> corpus;
    for (const auto& [regex, alphabet] : std::vector<std::pair<std::string, Alphabet>>{
             {kK, kAbc}, {kAll, kAbc}, {"(aa)*", {"a"}}, {"(a+b)*a(a+b)*", {"a", "b"}}, {"a*b*", {"a", "b"}},
             {"(ab)*", {"a", "b"}}, {"(a+b)*ab(a+b)*", {"a", "b"}}})
        corpus.push_back(transition_monoid(compile(regex, alphabet)).monoid);
    std::mt19937_64 rng(5);
    while (corpus.size() < 25) {
        const auto m = transition_monoid(compile(oracle::random_regex({"a", "b"}, 6, rng), {"a", "b"})).monoid;
        if (m.size() <= 12) corpus.push_back(m);
    }
    for (const auto& m : corpus) {
        const auto sw = subword_relation(m);
        const auto brute = oracle::subword_pairs(m, 6);
        const auto pairs = sw.pairs();
        REQUIRE(std::set<std::pair<Element, Element>>(pairs.begin(), pairs.end()) == brute);
        for (const auto& [x, y] : pairs) {
            const auto w = sw.witness(x, y);
            REQUIRE(m.evaluate(w.word) == x);
            REQUIRE(m.evaluate(w.subword()) == y);
            for (const auto& [x2, y2] : pairs) REQUIRE(sw.contains(m.multiply(x, x2), m.multiply(y, y2)));
        }
    }
}

TEST_CASE("equation check on positive and negative examples") {
    const auto check = [](const std::string& regex, const Alphabet& alphabet) {
        const auto r = recognize(compile(regex, alphabet));
        return check_sigma2(r, subword_relation(r.monoid()));
    };
    CHECK(check(kAll, kAbc).in_class);
    CHECK(check("(a+b)*a(a+b)*", {"a", "b"}).in_class);

    const auto k = check(kK, kAbc);
    REQUIRE_FALSE(k.in_class);
    REQUIRE(k.witness);
    const auto km = transition_monoid(compile(kK, kAbc)).monoid;
    CHECK(render_word(km.representative(k.witness->x)) == "ab");
    CHECK(render_word(km.representative(k.witness->y)) == "a");

    const auto kp = compile(kKPrime, kAbc);
    const auto rp = recognize(kp);
    const auto swp = subword_relation(rp.monoid());
    CHECK_FALSE(check_sigma2(rp, swp).in_class);
    const auto paper = verify_failing_pair(rp, swp, rp.monoid().evaluate(chars("abab")), rp.monoid().evaluate(chars("ba")));
    REQUIRE(paper);
    CHECK(replay_witness(kp, *paper));
}

TEST_CASE("witnesses satisfy their contract") {
    for (const auto& regex : {kK, kKPrime, kDyck2, std::string("(ab+c)*a"), std::string("a*b*c*")}) {
        const auto d = compile(regex, kAbc);
        const auto r = recognize(d);
        const auto sw = subword_relation(r.monoid());
        INFO(regex);
        for (const auto& [rec, dfa] : {std::pair{r, d}, std::pair{r.complement(), complement(d)}}) {
            const auto v = check_sigma2(rec, sw);
            if (v.in_class) continue;
            REQUIRE(v.witness);
            const auto& w = *v.witness;
            const auto& m = rec.monoid();
            REQUIRE(m.is_idempotent(w.x));
            REQUIRE(sw.contains(w.x, w.y));
            REQUIRE(rec.in_accepting(m.multiply(w.p, w.x, w.q)));
            REQUIRE_FALSE(rec.in_accepting(m.multiply(m.multiply(w.p, w.x), m.multiply(w.y, w.x), w.q)));
            REQUIRE(replay_witness(dfa, w));
        }
    }
}

TEST_CASE("classify reports") {
    const auto all = classify(compile(kAll, kAbc));
    CHECK(all.sigma2.in_class);
    CHECK(all.pi2.in_class);
    CHECK(all.delta2());
    CHECK(all.neutral == kAbc);

    const auto k = classify(compile(kK, kAbc), "K");
    CHECK(k.description == "K");
    CHECK_FALSE(k.sigma2.in_class);
    CHECK(k.pi2.in_class);
    CHECK_FALSE(k.delta2());
    CHECK(k.neutral == Alphabet{"c"});
    CHECK(k.monoid_size == 6);
    CHECK(k.idempotent_count == 4);

    const auto dr = classify(compile(kDyck2, kAbc));
    CHECK_FALSE(dr.sigma2.in_class);
    CHECK_FALSE(dr.pi2.in_class);

    const auto kp = compile(kKPrime, kAbc);
    const auto kr = classify(kp);
    CHECK_FALSE(kr.sigma2.in_class);
    CHECK_FALSE(kr.pi2.in_class);
    const auto rec = recognize(kp);
    const auto sw = subword_relation(rec.monoid());
    const auto& m = rec.monoid();
    const auto co = verify_failing_pair(rec.complement(), sw, m.evaluate(chars("ababab")), m.evaluate(chars("bba")));
    REQUIRE(co);
    CHECK(replay_witness(complement(kp), *co));

    for (const auto& regex : {kK, kKPrime, kDyck2, kAll}) {
        const auto c = classify(compile(regex, kAbc));
        CHECK(c.delta2() == (c.sigma2.in_class && c.pi2.in_class));
    }
}

TEST_CASE("neutral letters agree with the definition") {
    for (const auto& [regex, alphabet] : std::vector<std::pair<std::string, Alphabet>>{
             {kK, kAbc}, {kAll, kAbc}, {"(aa)*", {"a"}}, {kDyck2, kAbc}, {"(a+b)*a(a+b)*", {"a", "b"}}}) {
        const auto d = compile(regex, alphabet);
        const auto neutral = neutral_letters(d);
        for (const auto& s : alphabet) {
            INFO(regex << " letter " << s);
            REQUIRE(contains_symbol(neutral, s) == oracle::is_neutral(d, s, 6));
        }
    }
    CHECK(neutral_letters(compile(kK, kAbc)) == Alphabet{"c"});
    CHECK(neutral_letters(compile("(aa)*", {"a"})).empty());
}

TEST_CASE("up-word problems") {
    const auto r = recognize(compile("(a+b)*a(a+b)*", {"a", "b"}));
    const auto& om = r.ordered();
    const Element one = r.monoid().identity(), z = r.monoid().image("a");
    const auto name = [](Element e) { return FiniteMonoid::element_name(e); };
    CHECK(up_word_accepts(om, z, Word{name(z)}));
    CHECK(up_word_accepts(om, one, Word{}));
    CHECK_FALSE(up_word_accepts(om, z, Word{name(one), name(one)}));
    CHECK(up_word_accepts(om, z, Word{name(one), name(z), name(one)}));
    CHECK_THROWS_AS(up_word_accepts(om, z, Word{"e7"}), UnknownSymbol);

    std::mt19937_64 rng(3);
    for (const auto& regex : {kK, kDyck2}) {
        const auto rk = recognize(compile(regex, kAbc));
        const auto alphabet = element_alphabet(rk.monoid());
        for (Element x = 0; x < rk.size(); ++x) {
            const auto dfa = up_word_dfa(rk.ordered(), x);
            for (int i = 0; i < 50; ++i) {
                const auto w = oracle::random_word(alphabet, 6, rng);
                REQUIRE(dfa.accepts(w) == up_word_accepts(rk.ordered(), x, w));
            }
        }
    }
}

TEST_CASE("up-word problems of idempotents fail the equation exactly when x is not below xyx") {
    const auto r = recognize(compile(kK, kAbc));
    const auto& m = r.monoid();
    const auto sw = subword_relation(m);
    for (Element x : m.idempotents())
        for (Element y : sw.subwords_of(x)) {
            const std::vector<Element> xyx{x, y, x};
            REQUIRE(up_word_accepts(r.ordered(), x, xyx) == r.leq(x, m.multiply(x, y, x)));
        }
}

TEST_CASE("omega powers") {
    const auto even = transition_monoid(compile("(aa)*", {"a"})).monoid;
    CHECK(omega_power(even, even.image("a")) == even.identity());
    const auto km = transition_monoid(compile(kK, kAbc)).monoid;
    for (Element e : km.idempotents()) CHECK(omega_power(km, e) == e);
    const Element ab = km.evaluate(chars("ab"));
    const Element w = omega_power(km, ab);
    CHECK(km.is_idempotent(w));
    Element power = ab;
    bool reached = false;
    for (int i = 0; i < km.size() && !reached; ++i, power = km.multiply(power, ab)) reached = power == w;
    CHECK(reached);
}

TEST_CASE("monoid JSON round-trips") {
    const auto r = recognize(compile(kDyck2, kAbc));
    const auto j = recognition_to_json(r);
    CHECK(j.at("generators").at("a").get<int>() == r.monoid().image("a"));
    const auto back = recognition_from_json(j);
    CHECK(back.monoid() == r.monoid());
    CHECK(back.ordered().order() == r.ordered().order());
    CHECK(back.accepting() == r.accepting());
}
