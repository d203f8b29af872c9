#include "sigma2/sigma2.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using sigma2::Json;

enum ExitCode { kOk = 0, kFailed = 1, kBadInput = 2, kTooLarge = 3 };

sigma2::Alphabet parse_alphabet(const std::string& text) {
    sigma2::Alphabet out;
    if (text.find(',') == std::string::npos) {
        for (char c : text) out.emplace_back(1, c);
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sigma2::InvalidArgument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw sigma2::InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw sigma2::InvalidArgument("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

Json family_value(const std::string& family) {
    if (family == "good" || family == "bad") return family;
    return read_json(family);
}

struct Output {
    bool json = false;
    std::string out_file;

    int emit(const Json& report) const {
        if (!out_file.empty()) write_json(out_file, report);
        if (json) std::cout << report.dump(2) << "\n";
        else sigma2::render_text(std::cout, report);
        return report.at("verification").at("passed").get<bool>() ? kOk : kFailed;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classify regular languages against the Sigma_2[<] equations and run the block-word lab"};
    app.require_subcommand(1);
    app.fallthrough();
    Output output;
    app.add_flag("--json", output.json, "Print the report as JSON");
    app.add_option("--out", output.out_file, "Also write the JSON report to this file");

    std::function<int()> action;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Decide Sigma_2, Pi_2 and Delta_2 membership of a regular language");
    std::string regex, alphabet_text, dfa_file, save_dfa, save_monoid, description;
    analyze->add_option("regex", regex, "Regular expression, e.g. \"(ac*b+c)*\"");
    analyze->add_option("--alphabet", alphabet_text, "Alphabet as \"abc\" or \"a,b,c\" (default: letters of the regex)");
    analyze->add_option("--dfa", dfa_file, "Analyze a DFA from a JSON file instead of a regex");
    analyze->add_option("--save-dfa", save_dfa, "Write the minimal DFA as JSON");
    analyze->add_option("--save-monoid", save_monoid, "Write the ordered syntactic monoid as JSON");
    analyze->add_option("--description", description, "Label carried into the report");
    analyze->callback([&] {
        action = [&] {
            Json input;
            if (!dfa_file.empty()) {
                input["dfa"] = read_json(dfa_file);
            } else {
                if (regex.empty() && alphabet_text.empty()) throw sigma2::InvalidArgument("give a regex or --dfa");
                input["regex"] = regex;
                input["alphabet"] = alphabet_text.empty() ? sigma2::symbols_in(regex) : parse_alphabet(alphabet_text);
            }
            if (!description.empty()) input["description"] = description;
            const Json report = sigma2::run_analyze(input);
            const auto d = sigma2::dfa_from_json(report.at("result").at("dfa"));
            if (!save_dfa.empty()) write_json(save_dfa, sigma2::dfa_to_json(d));
            if (!save_monoid.empty()) write_json(save_monoid, sigma2::recognition_to_json(sigma2::recognize(d)));
            return output.emit(report);
        };
    });

    // lab
    auto* lab = app.add_subcommand("lab", "Block-word experiments");
    lab->require_subcommand(1);
    int n = 9, k = 1, p = 2, samples = 200, d = 1;
    std::uint64_t seed = 0;
    std::string u, family = "good";
    bool no_caps = false;
    const auto add_no_caps = [&](CLI::App* sub) {
        sub->add_flag("--no-caps", no_caps, "Lift the k <= 2, r <= 5 entailment search caps (exponential cost)");
    };
    const auto with_caps = [&](Json input) {
        if (no_caps) {
            std::cerr << "warning: entailment caps lifted; the search is exponential in k and r\n";
            input["no_caps"] = true;
        }
        return input;
    };

    auto* klimit = lab->add_subcommand("klimit", "Check whether u is a k-limit of a family");
    klimit->add_option("--n", n)->required();
    klimit->add_option("--k", k)->required();
    klimit->add_option("--u", u)->required();
    klimit->add_option("--family", family, "good, bad, or a JSON file with a word list");
    klimit->callback([&] {
        action = [&] {
            return output.emit(sigma2::run_klimit(Json{{"n", n}, {"k", k}, {"u", u}, {"family", family_value(family)}}));
        };
    });

    auto* flower = lab->add_subcommand("flower", "Find a p-petal flower among the a-position sets");
    flower->add_option("--n", n)->required();
    flower->add_option("--p", p)->required();
    flower->add_option("--family", family, "good, bad, or a JSON file with a word list");
    flower->callback([&] {
        action = [&] {
            return output.emit(sigma2::run_flower(Json{{"n", n}, {"p", p}, {"family", family_value(family)}}));
        };
    });

    auto* tangled = lab->add_subcommand("tangled", "Test k-tangledness; extract a bad k-limit when not tangled");
    tangled->add_option("--n", n)->required();
    tangled->add_option("--k", k)->required();
    tangled->add_option("--family", family, "good or a JSON file with a word list");
    add_no_caps(tangled);
    tangled->callback([&] {
        action = [&] {
            return output.emit(
                sigma2::run_tangled(with_caps(Json{{"n", n}, {"k", k}, {"family", family_value(family)}})));
        };
    });

    auto* dichotomy = lab->add_subcommand("dichotomy", "Random families: tangled and small, or a verified bad limit");
    dichotomy->add_option("--n", n)->required();
    dichotomy->add_option("--k", k)->required();
    dichotomy->add_option("--samples", samples);
    dichotomy->add_option("--seed", seed);
    add_no_caps(dichotomy);
    dichotomy->callback([&] {
        action = [&] {
            return output.emit(sigma2::run_dichotomy(
                with_caps(Json{{"n", n}, {"k", k}, {"samples", samples}, {"seed", seed}})));
        };
    });

    auto* thresholds = lab->add_subcommand("thresholds", "Smallest n meeting both size conditions");
    thresholds->add_option("--k", k)->required();
    thresholds->add_option("--d", d)->required();
    thresholds->callback([&] {
        action = [&] { return output.emit(sigma2::run_thresholds(Json{{"k", k}, {"d", d}})); };
    });

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Word-level reductions");
    reduce->require_subcommand(1);
    std::string word, lang = "(ac*b+c)*";
    std::vector<int> moduli;

    auto* expand = reduce->add_subcommand("expand", "Expansion of a block word into K");
    expand->add_option("--word", word)->required();
    expand->callback([&] { action = [&] { return output.emit(sigma2::run_expand(Json{{"word", word}})); }; });

    auto* wire = reduce->add_subcommand("wire", "Wire a block word into a monoid word for a failing pair of a language");
    wire->add_option("--word", word)->required();
    wire->add_option("--lang", lang, "Regular expression whose failing pair is used");
    wire->add_option("--alphabet", alphabet_text);
    wire->callback([&] {
        action = [&] {
            const auto alphabet = alphabet_text.empty() ? sigma2::symbols_in(lang) : parse_alphabet(alphabet_text);
            return output.emit(sigma2::run_wire(Json{{"word", word}, {"lang", lang}, {"alphabet", alphabet}}));
        };
    });

    auto* annotate = reduce->add_subcommand("annotate", "Annotate each position with the moduli dividing it");
    annotate->add_option("--word", word)->required();
    annotate->add_option("--moduli", moduli, "Positive moduli")->required()->delimiter(',');
    annotate->callback([&] {
        action = [&] { return output.emit(sigma2::run_annotate(Json{{"word", word}, {"moduli", moduli}})); };
    });

    // circuit
    auto* circuit = app.add_subcommand("circuit", "Depth-3 OR-AND-OR circuits");
    circuit->require_subcommand(1);
    std::string circuit_file, fixture, oracle = "entailment";
    const auto circuit_input = [&] {
        Json input;
        if (!circuit_file.empty()) input["circuit"] = read_json(circuit_file);
        else if (!fixture.empty()) input = Json{{"fixture", fixture}, {"n", n}};
        else throw sigma2::InvalidArgument("give --circuit or --fixture");
        return input;
    };
    const auto add_circuit_options = [&](CLI::App* sub) {
        sub->add_option("--circuit", circuit_file, "Circuit JSON file");
        sub->add_option("--fixture", fixture, "block-selector, accept-all or good-recognizer");
        sub->add_option("--n", n, "Input length for fixtures");
    };

    auto* eval = circuit->add_subcommand("eval", "Evaluate a circuit on a word");
    add_circuit_options(eval);
    eval->add_option("--word", word)->required();
    eval->callback([&] {
        action = [&] {
            Json input = circuit_input();
            input["word"] = word;
            return output.emit(sigma2::run_circuit_eval(input));
        };
    });

    auto* adversary = circuit->add_subcommand("adversary", "Find a word outside good_n that the circuit accepts");
    add_circuit_options(adversary);
    adversary->add_option("--k", k)->required();
    adversary->add_option("--oracle", oracle, "entailment or flower");
    adversary->callback([&] {
        action = [&] {
            Json input = circuit_input();
            input["k"] = k;
            input["oracle"] = oracle;
            return output.emit(sigma2::run_adversary(input));
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Reload a JSON report and re-verify it");
    std::string report_file;
    verify->add_option("report", report_file)->required();
    verify->callback([&] {
        action = [&] {
            const auto outcome = sigma2::verify_report(read_json(report_file));
            Json summary{{"report", report_file}, {"passed", outcome.passed}, {"failures", outcome.failures}};
            if (output.json) std::cout << summary.dump(2) << "\n";
            else sigma2::render_text(std::cout, summary);
            return outcome.passed ? kOk : kFailed;
        };
    });

    CLI11_PARSE(app, argc, argv);
    try {
        return action ? action() : kBadInput;
    } catch (const sigma2::MonoidTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTooLarge;
    } catch (const sigma2::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kFailed;
    }
}
