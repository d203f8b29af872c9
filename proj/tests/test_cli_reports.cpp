#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sigma2;

namespace {

const std::string kK = "(ac*b+c)*";

std::vector<std::pair<std::string, Json>> sample_inputs() {
    return {
        {"analyze", {{"regex", kK}, {"alphabet", {"a", "b", "c"}}}},
        {"analyze", {{"regex", "(a+b)*a(a+b)*"}, {"alphabet", {"a", "b"}}, {"description", "contains a"}}},
        {"lab.klimit", {{"n", 9}, {"k", 1}, {"u", "abbbbbabb"}, {"family", "good"}}},
        {"lab.klimit", {{"n", 4}, {"k", 1}, {"u", "baba"}, {"family", {"abab"}}}},
        {"lab.flower", {{"n", 9}, {"p", 2}, {"family", "good"}}},
        {"lab.tangled", {{"n", 9}, {"k", 1}, {"family", "good"}}},
        {"lab.tangled", {{"n", 4}, {"k", 1}, {"family", {"abab", "baba"}}}},
        {"lab.dichotomy", {{"n", 9}, {"k", 1}, {"samples", 30}, {"seed", 7}}},
        {"lab.thresholds", {{"k", 2}, {"d", 1}}},
        {"reduce.expand", {{"word", "abbbabbba"}}},
        {"reduce.wire", {{"word", "abbbabbba"}, {"lang", kK}, {"alphabet", {"a", "b", "c"}}}},
        {"reduce.wire", {{"word", "abbbbbbba"}, {"lang", kK}, {"alphabet", {"a", "b", "c"}}}},
        {"reduce.annotate", {{"word", "abcabc"}, {"moduli", {2, 3}}}},
        {"circuit.eval", {{"fixture", "block-selector"}, {"n", 9}, {"word", "abbbbbbbb"}}},
        {"circuit.adversary", {{"fixture", "block-selector"}, {"n", 9}, {"k", 1}, {"oracle", "entailment"}}},
        {"circuit.adversary", {{"fixture", "accept-all"}, {"n", 9}, {"k", 1}, {"oracle", "flower"}}},
        {"circuit.adversary", {{"fixture", "good-recognizer"}, {"n", 9}, {"k", 1}}},
    };
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(SIGMA2_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("every report kind verifies after a JSON round trip") {
    for (const auto& [kind, input] : sample_inputs()) {
        INFO(kind << " " << input.dump());
        const auto report = run_report(kind, input);
        REQUIRE(report.at("kind") == kind);
        REQUIRE(report.at("input") == input);
        REQUIRE(report.at("verification").at("passed").get<bool>());
        const auto reloaded = Json::parse(report.dump(2));
        const auto outcome = verify_report(reloaded);
        for (const auto& f : outcome.failures) UNSCOPED_INFO(f);
        REQUIRE(outcome.passed);
        REQUIRE(run_report(kind, input).dump() == report.dump());
    }
}

TEST_CASE("report contents") {
    const auto k = run_report("analyze", {{"regex", kK}, {"alphabet", {"a", "b", "c"}}});
    const auto& r = k.at("result");
    CHECK(r.at("dfa_states") == 3);
    CHECK(r.at("monoid").at("size") == 6);
    CHECK(r.at("monoid").at("subword_pairs") == 31);
    CHECK(r.at("neutral_letters") == Json{"c"});
    CHECK(r.at("verdicts").at("sigma2_lt").at("holds") == false);
    CHECK(r.at("verdicts").at("pi2_lt").at("holds") == true);
    CHECK(r.at("verdicts").at("delta2_lt").at("holds") == false);
    CHECK(r.at("verdicts").at("sigma2_lt").at("witness").at("x_word") == "ab");

    const auto expand = run_report("reduce.expand", {{"word", "abbbabbba"}});
    CHECK(expand.at("result").at("expansion") == "accbcacbccab");

    const auto thresholds = run_report("lab.thresholds", {{"k", 1}, {"d", 1}});
    CHECK(thresholds.at("result").at("n") == 36);

    const auto adv = run_report("circuit.adversary", {{"fixture", "good-recognizer"}, {"n", 9}, {"k", 1}});
    CHECK(adv.at("result").at("hypothesis_met") == false);
    CHECK(adv.at("result").at("word").is_null());

    const auto dich = run_report("lab.dichotomy", {{"n", 9}, {"k", 1}, {"samples", 30}, {"seed", 7}});
    CHECK(dich.at("result").at("failures") == 0);
    CHECK(dich.at("result").at("entries").size() == 30);

    CHECK_THROWS_AS(run_report("lab.unknown", Json::object()), InvalidArgument);
    CHECK_THROWS_AS(run_report("lab.klimit", {{"n", 9}, {"k", 1}, {"u", "ab"}, {"family", "good"}}), InvalidArgument);
}

TEST_CASE("tampered reports fail verification") {
    auto analyze = run_report("analyze", {{"regex", kK}, {"alphabet", {"a", "b", "c"}}});
    auto tampered = analyze;
    tampered["result"]["verdicts"]["sigma2_lt"]["witness"]["p"] = 5;
    CHECK_FALSE(verify_report(tampered).passed);

    tampered = analyze;
    tampered["result"]["neutral_letters"] = Json{"a"};
    CHECK_FALSE(verify_report(tampered).passed);

    tampered = analyze;
    tampered["verification"]["passed"] = false;
    CHECK_FALSE(verify_report(tampered).passed);

    auto adv = run_report("circuit.adversary", {{"fixture", "block-selector"}, {"n", 9}, {"k", 1}});
    adv["result"]["word"] = "bbbbbbbbb";
    const auto outcome = verify_report(adv);
    CHECK_FALSE(outcome.passed);
    CHECK(outcome.failures.size() >= 2);

    auto flower = run_report("lab.flower", {{"n", 9}, {"p", 2}, {"family", "good"}});
    flower["result"]["core"] = Json{1};
    CHECK_FALSE(verify_report(flower).passed);

    auto limit = run_report("lab.klimit", {{"n", 9}, {"k", 1}, {"u", "abbbbbabb"}, {"family", "good"}});
    limit["result"]["is_k_limit"] = false;
    CHECK_FALSE(verify_report(limit).passed);
}

TEST_CASE("the command-line tool writes reports the library re-verifies") {
    const auto dir = std::filesystem::temp_directory_path() / ("sigma2_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto out = dir / "k.json";

    REQUIRE(run_cli("--out " + out.string() + " analyze '" + kK + "'") == 0);
    const auto j = Json::parse(slurp(out));
    CHECK(j == run_report("analyze", {{"regex", kK}, {"alphabet", {"a", "b", "c"}}}));
    CHECK(verify_report(j).passed);
    CHECK(run_cli("verify " + out.string()) == 0);

    auto tampered = j;
    tampered["result"]["dfa_states"] = 4;
    std::ofstream(dir / "bad.json") << tampered.dump(2);
    CHECK(run_cli("verify " + (dir / "bad.json").string()) == 1);

    CHECK(run_cli("analyze '(ab' --alphabet abc") == 2);
    CHECK(run_cli("analyze 'ad' --alphabet abc") == 2);
    CHECK(run_cli("analyze --dfa " + std::string(SIGMA2_DATA) + "/big_monoid_dfa.json") == 3);
    CHECK(run_cli("lab klimit --n 9 --k 1 --u abbbbbabb") == 0);
    CHECK(run_cli("lab tangled --n 36 --k 1") == 2);
    CHECK(run_cli("circuit adversary --fixture good-recognizer --n 9 --k 1") == 0);
    CHECK(run_cli("reduce annotate --word ab --moduli 0") == 2);
    CHECK(run_cli("no-such-command") != 0);

    std::filesystem::remove_all(dir);
}
