#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cml/abbrev.hpp"
#include "cml/atoms.hpp"
#include "cml/enumerate.hpp"
#include "cml/errors.hpp"
#include "cml/eval.hpp"
#include "cml/fragment.hpp"
#include "cml/geometry.hpp"
#include "cml/json_io.hpp"
#include "cml/oracle.hpp"
#include "cml/parser.hpp"
#include "cml/printer.hpp"
#include "cml/rewrite.hpp"

namespace {

using nlohmann::json;

cml::EnumGuard guard_from_env() {
    cml::EnumGuard guard;
    if (const char* env = std::getenv("CML_MAX_STATES")) {
        try {
            guard.max_states = std::stoll(env);
        } catch (...) {
            throw cml::InputError("CML_MAX_STATES is not a number");
        }
    }
    return guard;
}

cml::LawMode mode_from_string(const std::string& s) {
    if (s == "no-laws") return cml::LawMode::NoLaws;
    if (s == "fixed-laws") return cml::LawMode::FixedLaws;
    if (s == "all-laws") return cml::LawMode::AllLaws;
    throw cml::InputError("mode must be no-laws, fixed-laws or all-laws");
}

cml::IneqClass target_from_string(const std::string& s) {
    if (s == "monic") return cml::IneqClass::Monic;
    if (s == "signed-monic") return cml::IneqClass::SignedMonic;
    if (s == "signed-binary") return cml::IneqClass::SignedBinary;
    throw cml::InputError("target must be monic, signed-monic or signed-binary");
}

std::vector<int> tuple_from_string(const std::string& text, const cml::Signature& sig) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&]() {
        size_t a = cur.find_first_not_of(" \t");
        if (a == std::string::npos) throw cml::InputError("empty variable in tuple");
        size_t b = cur.find_last_not_of(" \t");
        std::string name = cur.substr(a, b - a + 1);
        int v = sig.var_index(name);
        if (v < 0) throw cml::InputError("unknown variable in tuple: " + name);
        out.push_back(v);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

struct VarSpec {
    std::vector<int> xs, ys, zs;
};

VarSpec vars_from_string(const std::string& text, const cml::Signature& sig) {
    std::string head = text, cond;
    size_t bar = text.find('|');
    if (bar != std::string::npos) {
        head = text.substr(0, bar);
        cond = text.substr(bar + 1);
    }
    size_t semi = head.find(';');
    if (semi == std::string::npos)
        throw cml::InputError("--vars wants \"X;Y\" or \"X;Y|Z\" with comma tuples");
    VarSpec spec;
    spec.xs = tuple_from_string(head.substr(0, semi), sig);
    spec.ys = tuple_from_string(head.substr(semi + 1), sig);
    if (bar != std::string::npos) spec.zs = tuple_from_string(cond, sig);
    return spec;
}

cml::Signature signature_for(const std::string& sig_path, const std::string& laws_path) {
    if (!sig_path.empty()) return cml::load_signature_file(sig_path);
    if (!laws_path.empty()) return cml::load_signature_file(laws_path);
    throw cml::InputError("either --sig or --laws is required");
}

// laws travel inside a model file; its signature must agree with the working one
cml::FunctionComponent laws_for(const std::string& laws_path, const cml::Signature& sig) {
    cml::CausalMultiteam m = cml::load_model_file(laws_path);
    if (*m.sig != sig)
        throw cml::InputError("the laws file declares a different signature than --sig");
    return m.laws;
}

void emit(bool as_json, const json& j, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cml: model checking, rewriting and inequality compilation for probabilistic "
                 "causal logics over causal multiteams"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit structured JSON output");

    // check
    std::string model_path, formula_text;
    auto* check = app.add_subcommand("check", "evaluate a formula on a model");
    check->add_option("-m,--model", model_path, "model JSON file")->required();
    check->add_option("-f,--formula", formula_text, "formula text")->required();

    // classify
    std::string sig_path;
    auto* classify = app.add_subcommand("classify", "print a formula's fragment");
    classify->add_option("-f,--formula", formula_text, "formula text")->required();
    classify->add_option("--sig", sig_path, "signature JSON file")->required();

    // rewrite
    std::string pass, laws_path;
    auto* rewrite = app.add_subcommand("rewrite", "apply an equivalence-preserving pass");
    rewrite->add_option("--pass", pass, "supset-nf | push-box | relativize | expand-abbrev")
        ->required();
    rewrite->add_option("-f,--formula", formula_text, "formula text")->required();
    rewrite->add_option("--sig", sig_path, "signature JSON file");
    rewrite->add_option("--laws", laws_path, "model JSON file providing the laws");

    // extract
    long long simplify_den = 0;
    auto* extract = app.add_subcommand("extract", "compile a formula to inequality systems");
    extract->add_option("-f,--formula", formula_text, "formula text")->required();
    extract->add_option("--sig", sig_path, "signature JSON file");
    extract->add_option("--laws", laws_path, "model JSON file providing the laws");
    extract->add_option("--simplify", simplify_den,
                        "drop subsumed union branches on the denominator<=N grid (heuristic)");

    // synth
    std::string system_path, target_text;
    auto* synth = app.add_subcommand("synth", "compile inequality systems to a formula");
    synth->add_option("-i,--input", system_path, "inequality-system JSON file")->required();
    synth->add_option("--target", target_text, "monic | signed-monic | signed-binary")->required();
    synth->add_option("--sig", sig_path, "signature JSON file (default: one synthetic variable)");

    // equiv
    std::string formula2_text, mode_text = "no-laws";
    long long max_size = 4;
    auto* equiv = app.add_subcommand("equiv", "exhaustive equivalence check");
    equiv->add_option("--f1", formula_text, "first formula")->required();
    equiv->add_option("--f2", formula2_text, "second formula")->required();
    equiv->add_option("--sig", sig_path, "signature JSON file")->required();
    equiv->add_option("--max-size", max_size, "largest multiteam size (default 4)");
    equiv->add_option("--mode", mode_text, "no-laws | fixed-laws | all-laws (default no-laws)");
    equiv->add_option("--laws", laws_path, "model JSON file for fixed-laws mode");

    // atoms expand
    std::string kind_text, vars_text;
    auto* atoms = app.add_subcommand("atoms", "team-semantics atom macros");
    auto* atoms_expand = atoms->add_subcommand("expand", "print an atom's macro expansion");
    atoms_expand->add_option("--kind", kind_text, "dep | mi | indep | cindep")->required();
    atoms_expand->add_option("--vars", vars_text, "tuples, e.g. \"X;Y\" or \"X;Y|Z\"")->required();
    atoms_expand->add_option("--sig", sig_path, "signature JSON file")->required();

    // discriminant
    std::string delta_text;
    auto* discriminant = app.add_subcommand("discriminant", "conic discriminant at delta");
    discriminant->add_option("--delta", delta_text, "rational in (0,1)")->required();

    // enumerate
    std::string enum_mode_text = "no-laws";
    auto* enumerate = app.add_subcommand("enumerate", "stream all models up to a size");
    enumerate->add_option("--sig", sig_path, "signature JSON file")->required();
    enumerate->add_option("--max-size", max_size, "largest multiteam size")->required();
    enumerate->add_option("--mode", enum_mode_text, "no-laws | fixed-laws | all-laws");
    enumerate->add_option("--laws", laws_path, "model JSON file for fixed-laws mode");

    std::function<void(CLI::App*)> allow_global_flags = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough(true);
            allow_global_flags(sub);
        }
    };
    allow_global_flags(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        cml::EnumGuard guard = guard_from_env();

        if (*check) {
            cml::CausalMultiteam m = cml::load_model_file(model_path);
            cml::FPtr f = cml::parse(formula_text, *m.sig);
            bool verdict = cml::eval(m, f);
            emit(as_json, json{{"verdict", verdict}}, verdict ? "true" : "false");
            return verdict ? 0 : 1;
        }

        if (*classify) {
            cml::Signature sig = cml::load_signature_file(sig_path);
            cml::FPtr f = cml::parse(formula_text, sig);
            const char* label = cml::fragment_str(cml::classify_fragment(f));
            emit(as_json, json{{"fragment", label}}, label);
            return 0;
        }

        if (*rewrite) {
            cml::Signature sig = signature_for(sig_path, laws_path);
            cml::FPtr f = cml::expand_abbreviations(cml::parse(formula_text, sig), sig);
            cml::FPtr out;
            if (pass == "supset-nf") {
                out = cml::supset_normal_form(f, sig);
            } else if (pass == "push-box") {
                out = cml::push_boxright(f, sig);
            } else if (pass == "relativize") {
                if (laws_path.empty()) throw cml::InputError("relativize needs --laws");
                out = cml::relativize(f, laws_for(laws_path, sig), sig);
            } else if (pass == "expand-abbrev") {
                out = f;
            } else {
                throw cml::InputError("unknown pass: " + pass);
            }
            std::string text = cml::print(out, sig);
            emit(as_json, json{{"formula", text}}, text);
            return 0;
        }

        if (*extract) {
            cml::Signature sig = signature_for(sig_path, laws_path);
            cml::FPtr f = cml::expand_abbreviations(cml::parse(formula_text, sig), sig);
            std::optional<cml::FunctionComponent> laws;
            if (!laws_path.empty()) laws = laws_for(laws_path, sig);
            cml::ProbabilitySet set = cml::extract(f, sig, laws);
            if (simplify_den > 0) set = cml::simplify_on_grid(set, simplify_den);
            const char* cls = cml::ineq_class_str(cml::classify_set(set));
            std::string sys = cml::system_to_json_string(set);
            if (as_json)
                std::cout << json{{"system", json::parse(sys)}, {"class", cls}}.dump(2) << "\n";
            else
                std::cout << sys << "\nIneqClass: " << cls << "\n";
            return 0;
        }

        if (*synth) {
            cml::ProbabilitySet set = cml::load_system_file(system_path);
            cml::Signature sig;
            if (!sig_path.empty()) {
                sig = cml::load_signature_file(sig_path);
            } else {
                std::vector<cml::Value> range;
                for (long long i = 0; i < set.n; ++i) range.emplace_back(i);
                sig = cml::Signature({"S"}, {range});
            }
            cml::FPtr f = cml::synth(set, target_from_string(target_text), sig);
            std::string text = cml::print(f, sig);
            emit(as_json, json{{"formula", text}}, text);
            return 0;
        }

        if (*equiv) {
            cml::Signature sig = cml::load_signature_file(sig_path);
            cml::FPtr f1 = cml::parse(formula_text, sig);
            cml::FPtr f2 = cml::parse(formula2_text, sig);
            cml::LawMode mode = mode_from_string(mode_text);
            std::optional<cml::FunctionComponent> laws;
            if (mode == cml::LawMode::FixedLaws) {
                if (laws_path.empty()) throw cml::InputError("fixed-laws mode needs --laws");
                laws = laws_for(laws_path, sig);
            }
            auto cex = cml::equiv(f1, f2, sig, max_size, mode, laws, guard);
            if (!cex) {
                emit(as_json, json{{"result", "pass"}}, "pass");
                return 0;
            }
            std::string model = cml::model_to_json_string(cex->model);
            if (as_json)
                std::cout << json{{"result", "counterexample"},
                                  {"lhs", cex->lhs},
                                  {"rhs", cex->rhs},
                                  {"model", json::parse(model)}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << "counterexample (f1=" << (cex->lhs ? "true" : "false")
                          << ", f2=" << (cex->rhs ? "true" : "false") << "):\n"
                          << model << "\n";
            return 1;
        }

        if (*atoms_expand) {
            cml::Signature sig = cml::load_signature_file(sig_path);
            VarSpec spec = vars_from_string(vars_text, sig);
            cml::AtomKind kind;
            if (kind_text == "dep") kind = cml::AtomKind::Dep;
            else if (kind_text == "mi") kind = cml::AtomKind::Mi;
            else if (kind_text == "indep") kind = cml::AtomKind::Indep;
            else if (kind_text == "cindep") kind = cml::AtomKind::Cindep;
            else throw cml::InputError("unknown atom kind: " + kind_text);
            if (kind == cml::AtomKind::Indep && !spec.zs.empty()) kind = cml::AtomKind::Cindep;
            cml::FPtr f = cml::expand_atom(kind, spec.xs, spec.ys, spec.zs, sig);
            std::string text = cml::print(f, sig);
            emit(as_json, json{{"formula", text}}, text);
            return 0;
        }

        if (*discriminant) {
            cml::Rational d = cml::conic_discriminant(cml::Rational::parse(delta_text));
            emit(as_json, json{{"discriminant", d.str()}}, d.str());
            return 0;
        }

        if (*enumerate) {
            cml::Signature sig = cml::load_signature_file(sig_path);
            cml::LawMode mode = mode_from_string(enum_mode_text);
            std::optional<cml::FunctionComponent> laws;
            if (mode == cml::LawMode::FixedLaws) {
                if (laws_path.empty()) throw cml::InputError("fixed-laws mode needs --laws");
                laws = laws_for(laws_path, sig);
            }
            cml::enumerate_models(sig, max_size, mode, laws, guard,
                                  [&](const cml::CausalMultiteam& m) {
                                      std::cout << cml::model_to_json_string(m, false) << "\n";
                                      return true;
                                  });
            return 0;
        }
    } catch (const cml::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cml::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
