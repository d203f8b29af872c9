#pragma once

#include "sigma2/serialize.hpp"
#include "sigma2/thresholds.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace sigma2 {

// Every report is {kind, input, result, verification}; `input` alone determines the rest, so a
// report re-verifies by recomputing from its input and re-running the independent checks.

namespace detail {

inline std::vector<std::string> resolve_family(const Json& family, int n) {
    if (family.is_string()) {
        const auto name = family.get<std::string>();
        if (name == "good") return enumerate_good(n);
        if (name == "bad") return enumerate_bad(n);
        throw InvalidArgument("unknown family '" + name + "' (expected good, bad, or a word list)");
    }
    auto words = family.get<std::vector<std::string>>();
    for (const auto& w : words)
        if (static_cast<int>(w.size()) != n) throw InvalidArgument("family word '" + w + "' does not have length n");
    return words;
}

inline EntailmentCaps caps_of(const Json& input) {
    if (input.value("no_caps", false)) return {1 << 20, 1 << 20};
    return {};
}

inline Json report(std::string kind, Json input, Json result, Json verification) {
    bool passed = true;
    for (const auto& [key, value] : verification.items())
        if (value.is_boolean() && !value.get<bool>()) passed = false;
    verification["passed"] = passed;
    return Json{{"kind", std::move(kind)},
                {"input", std::move(input)},
                {"result", std::move(result)},
                {"verification", std::move(verification)}};
}

inline Json positions_json(const std::optional<std::vector<int>>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace detail

/// input: {regex, alphabet} or {dfa}, optional description.
inline Json run_analyze(const Json& input) {
    Dfa d = input.contains("dfa") ? dfa_from_json(input.at("dfa"))
                                  : compile(input.at("regex").get<std::string>(), input.at("alphabet").get<Alphabet>());
    const auto description = input.value("description", input.value("regex", std::string("dfa")));
    const auto rep = classify(d, description);
    const auto tm = transition_monoid(d);
    Json result = class_report_to_json(rep, tm.monoid);
    result["dfa"] = dfa_to_json(d);
    Json verification;
    verification["sigma2_witness_replays"] =
        rep.sigma2.witness ? Json(replay_witness(d, *rep.sigma2.witness)) : Json(nullptr);
    verification["pi2_witness_replays"] =
        rep.pi2.witness ? Json(replay_witness(complement(d), *rep.pi2.witness)) : Json(nullptr);
    verification["failing_verdicts_have_witnesses"] =
        (rep.sigma2.in_class || rep.sigma2.witness.has_value()) && (rep.pi2.in_class || rep.pi2.witness.has_value());
    return detail::report("analyze", input, std::move(result), std::move(verification));
}

/// input: {n, k, u, family}.
inline Json run_klimit(const Json& input) {
    const int n = input.at("n").get<int>(), k = input.at("k").get<int>();
    const auto u = input.at("u").get<std::string>();
    const auto family = detail::resolve_family(input.at("family"), n);
    if (static_cast<int>(u.size()) != n) throw InvalidArgument("u must have length n");
    const auto violation = k_limit_violation(u, family, k);
    Json result{{"family_size", family.size()},
                {"is_k_limit", !violation.has_value()},
                {"violation", detail::positions_json(violation)}};
    return detail::report("lab.klimit", input, std::move(result), Json{{"exhaustive", true}});
}

/// input: {n, p, family}; the core word is checked as a (p-1)-limit.
inline Json run_flower(const Json& input) {
    const int n = input.at("n").get<int>(), p = input.at("p").get<int>();
    const auto family = detail::resolve_family(input.at("family"), n);
    SetFamily sets;
    for (const auto& w : family) sets.push_back(tau(w));
    const auto flower = find_flower(sets, p);
    Json result{{"family_size", family.size()}, {"found", flower.has_value()}};
    Json verification;
    if (flower) {
        std::string u(static_cast<std::size_t>(n), 'b');
        for (int pos : flower->core) u[pos - 1] = 'a';
        result["petals"] = flower->members.size();
        result["members"] = flower->members;
        result["core"] = flower->core;
        result["core_word"] = u;
        verification["flower_verified"] = is_flower(*flower, p);
        verification["members_from_family"] = std::all_of(
            flower->members.begin(), flower->members.end(),
            [&](const PositionSet& s) { return std::find(sets.begin(), sets.end(), s) != sets.end(); });
        if (p >= 2) {
            verification["core_word_outside_good"] = !is_good(u);
            verification["core_word_is_limit"] = is_k_limit(u, family, p - 1);
        }
    }
    return detail::report("lab.flower", input, std::move(result), std::move(verification));
}

namespace detail {

inline Json encoding_json(const TangledEncoding& e) {
    return Json{{"specified_positions", e.specified},
                {"max_kernel", e.max_kernel},
                {"kernel_bound_holds", e.kernel_bound_holds},
                {"round_trip", e.round_trip},
                {"injective", e.injective},
                {"bound", e.bound.str()},
                {"bound_holds", e.bound_holds}};
}

inline Json limit_json(const EntailmentLimit& l) {
    return Json{{"nu", to_string(l.nu)}, {"position", l.position}, {"mu", to_string(l.mu)}, {"word", l.word}};
}

/// One side of the dichotomy for F: tangled with a verified encoding, or a verified bad limit.
inline std::pair<Json, bool> dichotomy_entry(std::span<const std::string> family, int k, const EntailmentCaps& caps) {
    const auto phi = pack_family(family);
    const auto t = is_tangled(std::span<const PackedWord>(phi), k, caps);
    Json entry{{"family", packed_family_to_json(phi)}, {"tangled", t.tangled}};
    if (t.tangled) {
        const auto enc = tangled_encoding(std::span<const PackedWord>(phi), k, caps);
        entry["encoding"] = encoding_json(enc);
        return {entry, enc.verified()};
    }
    try {
        const auto limit = bad_limit_via_entailment(family, k, caps);
        if (!limit) return {entry, false};
        entry["limit"] = limit_json(*limit);
        return {entry, true};
    } catch (const std::logic_error& e) {
        entry["error"] = e.what();
        return {entry, false};
    }
}

}  // namespace detail

/// input: {n, k, family}.
inline Json run_tangled(const Json& input) {
    const int n = input.at("n").get<int>(), k = input.at("k").get<int>();
    const auto family = detail::resolve_family(input.at("family"), n);
    const auto caps = detail::caps_of(input);
    const auto phi = pack_family(family);
    const auto t = is_tangled(std::span<const PackedWord>(phi), k, caps);
    Json result{{"family_size", phi.size()}, {"tangled", t.tangled}};
    Json verification;
    if (t.tangled) {
        Json certs = Json::array();
        for (const auto& c : t.certificates)
            certs.push_back({{"word", to_string(c.word)},
                             {"position", c.position},
                             {"S", pairs_to_json(c.s)},
                             {"D", pairs_to_json(c.d)}});
        result["certificates"] = certs;
        const auto enc = tangled_encoding(std::span<const PackedWord>(phi), k, caps);
        result["encoding"] = detail::encoding_json(enc);
        verification["certificates_entail"] = std::all_of(t.certificates.begin(), t.certificates.end(), [&](const auto& c) {
            return agrees(c.word, c.s) && static_cast<int>(c.d.size()) <= k && entails(c.s, c.d, phi);
        });
        verification["encoding_verified"] = enc.verified();
    } else {
        result["witness"] = {{"nu", to_string(t.witness->first)}, {"position", t.witness->second}};
        const auto limit = bad_limit_via_entailment(family, k, caps);
        result["limit"] = detail::limit_json(*limit);
        verification["limit_is_bad"] = is_bad(limit->word);
        verification["limit_is_k_limit"] = is_k_limit(limit->word, family, k);
        verification["packed_conditions"] = check_packed_limit_conditions(limit->mu, limit->nu, phi, k);
    }
    return detail::report("lab.tangled", input, std::move(result), std::move(verification));
}

/// Random subfamily of `all` with a size drawn uniformly from [lo, hi], in the order of `all`.
inline std::vector<std::string> sample_family(const std::vector<std::string>& all, int lo, int hi, std::mt19937_64& rng) {
    const int size = std::uniform_int_distribution<int>(lo, hi)(rng);
    std::vector<std::string> out;
    std::sample(all.begin(), all.end(), std::back_inserter(out), size, rng);
    return out;
}

/// input: {n, k, samples, seed}.
inline Json run_dichotomy(const Json& input) {
    const int n = input.at("n").get<int>(), k = input.at("k").get<int>();
    const int samples = input.at("samples").get<int>();
    const auto caps = detail::caps_of(input);
    std::mt19937_64 rng(input.at("seed").get<std::uint64_t>());
    const auto good = enumerate_good(n);
    Json entries = Json::array();
    int tangled = 0, failures = 0;
    for (int s = 0; s < samples; ++s) {
        const auto family = sample_family(good, 1, static_cast<int>(good.size()), rng);
        auto [entry, ok] = detail::dichotomy_entry(family, k, caps);
        if (entry["tangled"].get<bool>()) ++tangled;
        if (!ok) ++failures;
        entry["passed"] = ok;
        entries.push_back(std::move(entry));
    }
    Json result{{"samples", samples},
                {"tangled", tangled},
                {"not_tangled", samples - tangled},
                {"failures", failures},
                {"entries", std::move(entries)}};
    return detail::report("lab.dichotomy", input, std::move(result), Json{{"all_samples_passed", failures == 0}});
}

/// input: {k, d}.
inline Json run_thresholds(const Json& input) {
    const int k = input.at("k").get<int>(), d = input.at("d").get<int>();
    const auto t = size_thresholds(k, d);
    Json result{{"n", t.n}, {"r", t.r}};
    Json verification{{"flower_condition", large_enough_for_flower(t.r, k, d)},
                      {"tangled_condition", large_enough_for_tangled(t.r, k, d)}};
    return detail::report("lab.thresholds", input, std::move(result), std::move(verification));
}

/// input: {word}.
inline Json run_expand(const Json& input) {
    const auto w = input.at("word").get<std::string>();
    const auto e = expansion(w);
    const auto k = compile("(ac*b+c)*", {"a", "b", "c"});
    const bool good = is_good(w), in_k = k.accepts(chars(e));
    Json result{{"expansion", e}, {"good", good}, {"in_K", in_k}};
    return detail::report("reduce.expand", input, std::move(result),
                          Json{{"length", e.size() == w.size() + static_cast<std::size_t>(block_size(w.size()))},
                               {"good_iff_in_K", good == in_k}});
}

/// Failing pair of the Sigma_2 equation for L(d) and its factorization; throws when L is in Sigma_2.
inline std::pair<Recognition, SubwordFactorization> failing_factorization(const Dfa& d) {
    auto rec = recognize(d);
    const auto sw = subword_relation(rec.monoid());
    const auto v = check_sigma2(rec, sw);
    if (v.in_class || !v.witness) throw PreconditionViolated("language satisfies the Sigma_2 equation; nothing to wire");
    auto f = factorize_subword_witness(rec.monoid(), v.witness->subword);
    return {std::move(rec), std::move(f)};
}

/// input: {word, lang, alphabet}.
inline Json run_wire(const Json& input) {
    const auto w = input.at("word").get<std::string>();
    const auto lang = input.at("lang").get<std::string>();
    const auto d = compile(lang, input.at("alphabet").get<Alphabet>());
    const auto [rec, f] = failing_factorization(d);
    const auto& m = rec.monoid();
    const Element x = m.evaluate(f.source.word);
    const Element y = m.evaluate(f.source.subword());
    MonoidWord out = wiring(w, f);
    out.monoid_ref = lang;
    const int r = block_size(w.size());
    const bool accepts = up_word_accepts(rec.ordered(), x, out.elements);
    Json expected = is_good(w) ? Json(true) : is_bad(w) ? Json(false) : Json(nullptr);
    Json result{{"x", x},
                {"y", y},
                {"factorization", {{"t", f.t()}, {"x", f.x}, {"y", f.y}}},
                {"monoid_word", monoid_word_to_json(out)},
                {"length", out.size()},
                {"evaluates_to", out.evaluate(m)},
                {"up_word_accepts", accepts}};
    Json verification{{"length", out.size() == static_cast<std::size_t>(f.t() * (r + 1) * (r + 2))}};
    if (!expected.is_null()) verification["verdict_matches_word_class"] = accepts == expected.get<bool>();
    return detail::report("reduce.wire", input, std::move(result), std::move(verification));
}

/// input: {word, moduli}.
inline Json run_annotate(const Json& input) {
    const auto w = chars(input.at("word").get<std::string>());
    const auto annotated = p_annotate(w, input.at("moduli").get<std::vector<int>>());
    return detail::report("reduce.annotate", input, Json{{"annotated", annotated_to_json(annotated)}},
                          Json{{"length", annotated.size() == w.size()}});
}

inline Sigma2Circuit circuit_fixture(const std::string& name, int n) {
    if (name == "block-selector") return block_selector_circuit(n);
    if (name == "accept-all") return accept_all_circuit(n);
    if (name == "good-recognizer") return circuit_for_good(n);
    throw InvalidArgument("unknown fixture '" + name + "' (block-selector, accept-all, good-recognizer)");
}

namespace detail {

inline Sigma2Circuit circuit_of(const Json& input) {
    if (input.contains("circuit")) return circuit_from_json(input.at("circuit"));
    return circuit_fixture(input.at("fixture").get<std::string>(), input.at("n").get<int>());
}

}  // namespace detail

/// input: {circuit | fixture + n, word}.
inline Json run_circuit_eval(const Json& input) {
    const auto c = detail::circuit_of(input);
    const auto w = parse_word(input.at("word").get<std::string>(), c.alphabet());
    Json ands = Json::array();
    for (int a : c.bottom()) ands.push_back(c.and_value(a, w));
    return detail::report("circuit.eval", input,
                          Json{{"accepted", eval_circuit(c, w)}, {"and_values", ands}, {"size", c.size()}},
                          Json::object());
}

inline LimitOracle entailment_oracle(const EntailmentCaps& caps = {}) {
    return [caps](std::span<const std::string> family, int k) -> std::optional<std::string> {
        const auto limit = bad_limit_via_entailment(family, k, caps);
        if (!limit) return std::nullopt;
        return limit->word;
    };
}

inline LimitOracle flower_oracle() {
    return [](std::span<const std::string> family, int k) -> std::optional<std::string> {
        const auto limit = bad_limit_via_flower(family, k);
        if (!limit) return std::nullopt;
        return limit->word;
    };
}

/// input: {circuit | fixture + n, k, oracle}; L′ = good_n and the target is any word outside it.
inline Json run_adversary(const Json& input) {
    const auto c = detail::circuit_of(input);
    const int k = input.at("k").get<int>();
    const auto oracle_name = input.value("oracle", std::string("entailment"));
    LimitOracle oracle;
    if (oracle_name == "entailment") oracle = entailment_oracle(detail::caps_of(input));
    else if (oracle_name == "flower") oracle = flower_oracle();
    else throw InvalidArgument("unknown oracle '" + oracle_name + "' (entailment, flower)");
    const auto language = enumerate_good(c.n());
    const auto res = adversary(c, language, k, oracle, [](const std::string& u) { return !is_good(u); });
    Json result{{"gate", res.gate},
                {"family_size", res.family.size()},
                {"family", packed_family_to_json(pack_all(res.family))},
                {"hypothesis_met", res.hypothesis_met}};
    Json verification;
    if (res.word) {
        result["word"] = *res.word;
        result["word_is_bad"] = is_bad(*res.word);
        verification["outside_language"] = res.outside_language;
        verification["is_k_limit"] = res.is_limit;
        verification["accepted_by_circuit"] = res.accepted;
    } else {
        result["word"] = nullptr;
        result["message"] = "hypothesis not met: the oracle found no limit for the densest gate's family";
    }
    return detail::report("circuit.adversary", input, std::move(result), std::move(verification));
}

inline Json run_report(const std::string& kind, const Json& input) {
    static const std::vector<std::pair<std::string, std::function<Json(const Json&)>>> table{
        {"analyze", run_analyze},          {"lab.klimit", run_klimit},        {"lab.flower", run_flower},
        {"lab.tangled", run_tangled},      {"lab.dichotomy", run_dichotomy},  {"lab.thresholds", run_thresholds},
        {"reduce.expand", run_expand},     {"reduce.wire", run_wire},         {"reduce.annotate", run_annotate},
        {"circuit.eval", run_circuit_eval}, {"circuit.adversary", run_adversary}};
    for (const auto& [name, fn] : table)
        if (name == kind) return fn(input);
    throw InvalidArgument("unknown report kind '" + kind + "'");
}

struct VerifyOutcome {
    bool passed = true;
    std::vector<std::string> failures;

    void fail(std::string what) {
        passed = false;
        failures.push_back(std::move(what));
    }
};

/// Recomputes the report from its input, compares, and re-runs the stored witnesses and limits.
inline VerifyOutcome verify_report(const Json& j) {
    VerifyOutcome out;
    const auto kind = j.at("kind").get<std::string>();
    const Json& input = j.at("input");
    const Json& result = j.at("result");
    const Json fresh = run_report(kind, input);
    if (fresh.at("result") != result) out.fail("result differs from recomputation");
    if (fresh.at("verification") != j.at("verification")) out.fail("verification flags differ from recomputation");
    if (!fresh.at("verification").at("passed").get<bool>()) out.fail("recomputed verification does not pass");

    if (kind == "analyze") {
        const Dfa d = dfa_from_json(result.at("dfa"));
        const auto alphabet = d.alphabet();
        const auto& v = result.at("verdicts");
        if (!v.at("sigma2_lt").at("witness").is_null() &&
            !replay_witness(d, witness_from_json(v.at("sigma2_lt").at("witness"), alphabet)))
            out.fail("stored sigma2 witness does not replay");
        if (!v.at("pi2_lt").at("witness").is_null() &&
            !replay_witness(complement(d), witness_from_json(v.at("pi2_lt").at("witness"), alphabet)))
            out.fail("stored pi2 witness does not replay");
    } else if (kind == "lab.flower" && result.at("found").get<bool>()) {
        Flower f{result.at("members").get<SetFamily>(), result.at("core").get<PositionSet>()};
        if (!is_flower(f, input.at("p").get<int>())) out.fail("stored flower fails brute-force verification");
    } else if (kind == "lab.tangled" && result.contains("limit")) {
        const auto family = detail::resolve_family(input.at("family"), input.at("n").get<int>());
        const auto u = result.at("limit").at("word").get<std::string>();
        if (!is_bad(u) || !is_k_limit(u, family, input.at("k").get<int>())) out.fail("stored limit does not re-check");
    } else if (kind == "circuit.adversary" && !result.at("word").is_null()) {
        const auto c = detail::circuit_of(input);
        const auto u = result.at("word").get<std::string>();
        const auto family = unpack_all(packed_family_from_json(result.at("family")));
        if (!eval_circuit(c, u)) out.fail("stored adversary word is rejected by the circuit");
        if (!is_k_limit(u, family, input.at("k").get<int>())) out.fail("stored adversary word is not a k-limit");
    } else if (kind == "reduce.wire") {
        const auto d = compile(input.at("lang").get<std::string>(), input.at("alphabet").get<Alphabet>());
        const auto rec = recognize(d);
        const auto w = monoid_word_from_json(result.at("monoid_word"));
        if (up_word_accepts(rec.ordered(), result.at("x").get<Element>(), w.elements) !=
            result.at("up_word_accepts").get<bool>())
            out.fail("stored monoid word re-evaluates differently");
    } else if (kind == "circuit.eval") {
        const auto c = detail::circuit_of(input);
        if (eval_circuit(c, parse_word(input.at("word").get<std::string>(), c.alphabet())) !=
            result.at("accepted").get<bool>())
            out.fail("evaluation differs");
    }
    return out;
}

/// Indented key/value rendering of a report.
inline void render_text(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    const auto flat = [](const Json& v) {
        return std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
    };
    for (const auto& [key, value] : j.items()) {
        if (value.is_object() && !value.empty()) {
            os << pad << key << ":\n";
            render_text(os, value, indent + 2);
        } else if (value.is_array() && !value.empty() && !flat(value)) {
            os << pad << key << ": [" << value.size() << " entries]\n";
            int index = 0;
            for (const auto& e : value) {
                if (e.is_object()) {
                    os << pad << "  - #" << index << "\n";
                    render_text(os, e, indent + 4);
                } else {
                    os << pad << "  - " << e.dump() << "\n";
                }
                ++index;
            }
        } else {
            os << pad << key << ": " << scalar(value) << "\n";
        }
    }
}

}  // namespace sigma2
