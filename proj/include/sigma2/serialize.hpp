#pragma once

#include "sigma2/block_word.hpp"
#include "sigma2/circuit.hpp"
#include "sigma2/classify.hpp"
#include "sigma2/dfa.hpp"
#include "sigma2/entailment.hpp"
#include "sigma2/flower.hpp"
#include "sigma2/monoid.hpp"
#include "sigma2/reductions.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sigma2 {

using Json = nlohmann::ordered_json;

inline Json dfa_to_json(const Dfa& d) {
    Json accepting = Json::array();
    for (int q = 0; q < d.state_count(); ++q)
        if (d.is_accepting(q)) accepting.push_back(q);
    return Json{{"alphabet", d.alphabet()},
                {"states", d.state_count()},
                {"initial", d.initial()},
                {"accepting", accepting},
                {"delta", d.delta()}};
}

inline Dfa dfa_from_json(const Json& j) {
    const int states = j.at("states").get<int>();
    std::vector<bool> accepting(static_cast<std::size_t>(std::max(states, 0)), false);
    for (const auto& q : j.at("accepting")) {
        const int s = q.get<int>();
        if (s < 0 || s >= states) throw InvalidArgument("accepting state out of range");
        accepting[s] = true;
    }
    return Dfa::make(j.at("alphabet").get<Alphabet>(), states, j.value("initial", 0), accepting,
                     j.at("delta").get<std::vector<std::vector<State>>>());
}

inline Json monoid_to_json(const FiniteMonoid& m) {
    Json gens = Json::object();
    for (const auto& [s, e] : m.generators()) gens[s] = e;
    Json reps = Json::array();
    for (Element e = 0; e < m.size(); ++e) reps.push_back(render_word(m.representative(e)));
    return Json{{"size", m.size()},     {"identity", m.identity()},    {"generators", gens},
                {"table", m.table()},   {"representatives", reps},     {"idempotents", m.idempotents()}};
}

inline FiniteMonoid monoid_from_json(const Json& j) {
    std::vector<std::pair<Symbol, Element>> gens;
    for (const auto& [symbol, e] : j.at("generators").items()) gens.emplace_back(symbol, e.get<Element>());
    return FiniteMonoid(j.at("table").get<std::vector<std::vector<Element>>>(), j.at("identity").get<Element>(),
                        std::move(gens));
}

inline Json recognition_to_json(const Recognition& r) {
    Json j = monoid_to_json(r.monoid());
    Json order = Json::array();
    for (Element s = 0; s < r.size(); ++s) {
        Json row = Json::array();
        for (Element t = 0; t < r.size(); ++t) row.push_back(r.leq(s, t));
        order.push_back(std::move(row));
    }
    Json accepting = Json::array();
    for (Element e = 0; e < r.size(); ++e)
        if (r.in_accepting(e)) accepting.push_back(e);
    j["order"] = order;
    j["accepting"] = accepting;
    return j;
}

/// Rebuilds and validates an ordered monoid with its accepting set.
inline Recognition recognition_from_json(const Json& j) {
    FiniteMonoid m = monoid_from_json(j);
    const int size = m.size();
    auto order = j.at("order").get<std::vector<std::vector<bool>>>();
    if (static_cast<int>(order.size()) != size) throw InvalidArgument("order matrix has the wrong size");
    for (const auto& row : order)
        if (static_cast<int>(row.size()) != size) throw InvalidArgument("order matrix has the wrong size");
    std::vector<bool> accepting(size, false);
    for (const auto& e : j.at("accepting")) {
        m.check(e.get<Element>());
        accepting[e.get<Element>()] = true;
    }
    OrderedMonoid om(std::move(m), std::move(order));
    om.validate();
    Recognition r(std::move(om), std::move(accepting));
    if (!r.accepting_is_upper_set()) throw InvalidArgument("accepting set is not an upper set");
    return r;
}

inline Json witness_to_json(const EquationWitness& w, const FiniteMonoid& m) {
    return Json{{"x", w.x},
                {"y", w.y},
                {"p", w.p},
                {"q", w.q},
                {"x_word", render_word(m.representative(w.x))},
                {"y_word", render_word(m.representative(w.y))},
                {"p_word", render_word(m.representative(w.p))},
                {"q_word", render_word(m.representative(w.q))},
                {"subword", {{"word", render_word(w.subword.word)}, {"embedding", w.subword.embedding}}}};
}

inline EquationWitness witness_from_json(const Json& j, const Alphabet& alphabet) {
    EquationWitness w;
    w.x = j.at("x").get<Element>();
    w.y = j.at("y").get<Element>();
    w.p = j.at("p").get<Element>();
    w.q = j.at("q").get<Element>();
    w.subword.word = parse_word(j.at("subword").at("word").get<std::string>(), alphabet);
    w.subword.embedding = j.at("subword").at("embedding").get<std::vector<int>>();
    return w;
}

inline Json verdict_to_json(const EquationVerdict& v, const FiniteMonoid& m) {
    Json j{{"holds", v.in_class}};
    j["witness"] = v.witness ? witness_to_json(*v.witness, m) : Json(nullptr);
    return j;
}

inline Json class_report_to_json(const ClassReport& r, const FiniteMonoid& m) {
    return Json{{"description", r.description},
                {"alphabet", r.alphabet},
                {"dfa_states", r.dfa_states},
                {"monoid",
                 {{"size", r.monoid_size},
                  {"idempotents", r.idempotent_count},
                  {"subword_pairs", r.subword_pair_count}}},
                {"neutral_letters", r.neutral},
                {"verdicts",
                 {{"sigma2_lt", verdict_to_json(r.sigma2, m)},
                  {"pi2_lt", verdict_to_json(r.pi2, m)},
                  {"delta2_lt", {{"holds", r.delta2()}}}}}};
}

inline Json packed_family_to_json(std::span<const PackedWord> phi) {
    Json out = Json::array();
    for (const auto& w : phi) out.push_back(to_string(w));
    return out;
}

inline std::vector<PackedWord> packed_family_from_json(const Json& j) {
    std::vector<PackedWord> out;
    for (const auto& w : j) out.push_back(parse_packed(w.get<std::string>()));
    return out;
}

inline Json pairs_to_json(const PairSet& s) {
    Json out = Json::array();
    for (const auto& p : s) out.push_back({p.position, p.content});
    return out;
}

inline Json circuit_to_json(const Sigma2Circuit& c) {
    Json top = Json::array();
    for (const auto& gate : c.top()) {
        Json lits = Json::array();
        for (const auto& lit : gate) lits.push_back({{"pos", lit.position}, {"letter", lit.letter}});
        top.push_back(lits);
    }
    return Json{{"n", c.n()}, {"alphabet", c.alphabet()}, {"top", top},
                {"and", c.ands()}, {"bottom", c.bottom()}, {"k", c.k()}};
}

inline Sigma2Circuit circuit_from_json(const Json& j) {
    std::vector<std::vector<Literal>> top;
    for (const auto& gate : j.at("top")) {
        std::vector<Literal> lits;
        for (const auto& lit : gate) lits.push_back({lit.at("pos").get<int>(), lit.at("letter").get<Symbol>()});
        top.push_back(std::move(lits));
    }
    return Sigma2Circuit(j.at("n").get<int>(), j.at("alphabet").get<Alphabet>(), j.at("k").get<int>(), std::move(top),
                         j.at("and").get<std::vector<std::vector<int>>>(), j.at("bottom").get<std::vector<int>>());
}

inline Json monoid_word_to_json(const MonoidWord& w) {
    return Json{{"monoid_ref", w.monoid_ref}, {"elements", w.elements}};
}

inline MonoidWord monoid_word_from_json(const Json& j) {
    return {j.at("monoid_ref").get<std::string>(), j.at("elements").get<std::vector<Element>>()};
}

inline Json annotated_to_json(const std::vector<AnnotatedSymbol>& w) {
    Json out = Json::array();
    for (const auto& a : w) out.push_back({a.symbol, a.moduli});
    return out;
}

}  // namespace sigma2
