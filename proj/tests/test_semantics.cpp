#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "cml/enumerate.hpp"
#include "cml/eval.hpp"
#include "cml/json_io.hpp"
#include "cml/parser.hpp"
#include "support/gen.hpp"

using namespace cml;

namespace {

CausalMultiteam bundled_model() {
    return load_model_file(std::string(CML_DATA_DIR) + "/paper_example.json");
}

CausalMultiteam from_counts(const Signature& sig, FunctionComponent laws,
                            const std::vector<std::pair<long long, long long>>& counts) {
    CausalMultiteam m;
    m.sig = std::make_shared<const Signature>(sig);
    m.laws = std::move(laws);
    for (auto [s, c] : counts) m.team.add(s, c);
    return m;
}

EvalConfig split_cfg() {
    EvalConfig cfg;
    cfg.co_strategy = EvalConfig::CoStrategy::SplitSearch;
    return cfg;
}

} // namespace

TEST_CASE("flat satisfaction on the bundled model") {
    CausalMultiteam m = bundled_model();
    CHECK(eval_co(m, parse("[Y:=1] Z!=5", *m.sig)));
    CHECK(eval_co(m, parse("X=1 => Z=3", *m.sig)));
    CHECK_FALSE(eval_co(m, parse("Z=3", *m.sig)));
}

TEST_CASE("the empty multiteam satisfies everything") {
    Signature sig = cmltest::sig_xy();
    CausalMultiteam empty = from_counts(sig, {}, {});
    cmltest::Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        CHECK(eval_co(empty, cmltest::gen_co(rng, sig, 3, {true, true})));
        CHECK(eval_pco(empty, cmltest::gen_pco(rng, sig, 3, {})));
    }
    CHECK(eval_pco(empty, parse("Pr(X=1) > 1", sig)));
}

TEST_CASE("tensor splits respect multiplicities") {
    Signature sig = cmltest::sig_xy();
    CausalMultiteam two = from_counts(sig, {}, {{0, 1}, {2, 1}}); // (X=0,Y=0), (X=1,Y=0)
    CHECK(eval_co(two, parse("X=0 or X=1", sig), split_cfg()));
    CHECK_FALSE(eval_co(two, parse("X=0", sig), split_cfg()));
    CHECK(eval_co(two, parse("X=0 or X=1", sig))); // rowwise agrees

    EvalConfig tight = split_cfg();
    tight.split_bound = 1;
    CHECK_THROWS_AS(eval_co(two, parse("X=0 or X=1", sig), tight), GuardError);
}

TEST_CASE("rowwise equals split search on a random corpus") {
    Signature sig = cmltest::sig_xy();
    cmltest::Rng rng(17);
    auto models = collect_models(sig, 4, LawMode::AllLaws);
    for (int i = 0; i < 50; ++i) {
        FPtr alpha = cmltest::gen_co(rng, sig, 3, {true, true});
        for (size_t j = 0; j < models.size(); j += 5)
            CHECK(eval_co(models[j], alpha) == eval_co(models[j], alpha, split_cfg()));
    }
}

TEST_CASE("causal-team transfer on a random corpus") {
    Signature sig = cmltest::sig_xy();
    cmltest::Rng rng(19);
    auto models = collect_models(sig, 4, LawMode::AllLaws);
    for (int i = 0; i < 50; ++i) {
        FPtr alpha = cmltest::gen_co(rng, sig, 3, {true, true});
        for (size_t j = 0; j < models.size(); j += 5)
            CHECK(eval_co(models[j], alpha) == eval_ct(models[j], alpha));
    }
}

TEST_CASE("probabilistic clauses") {
    CausalMultiteam m = bundled_model();
    CHECK(eval_pco(m, parse("[Y:=1] Pr(Z=3) >= 1/2", *m.sig)));
    CHECK_FALSE(eval_pco(m, parse("Pr(Z=3) >= 1/2", *m.sig)));
    CHECK(eval_pco(m, parse("Pr(Z=3) >= 1/3 and Pr(Z=3) <= 1/3", *m.sig)));

    Signature sig = cmltest::sig_xy();
    CausalMultiteam mixed = from_counts(sig, {}, {{0, 1}, {3, 3}});
    CHECK(eval_pco(mixed, parse("Pr(X=1) >= Pr(X=0)", sig))); // 3/4 vs 1/4
    CHECK(eval_pco(mixed, parse("Pr(X=1) > 0 gor Pr(Y=0) >= 1", sig)));
    // inconsistent antecedent is trivially true
    CHECK(eval_pco(mixed, parse("[X:=0,X:=1] Pr(X=0) >= 1", sig)));
}

TEST_CASE("probabilistic formulas are not flat: concrete witness") {
    Signature sig = cmltest::sig_xy();
    FPtr phi = parse("Pr(X=1) >= 1/2", sig);
    CausalMultiteam mixed = from_counts(sig, {}, {{0, 1}, {2, 1}});
    REQUIRE(eval_pco(mixed, phi));
    CausalMultiteam refuting = from_counts(sig, {}, {{0, 1}});
    CHECK_FALSE(eval_pco(refuting, phi));
}

TEST_CASE("verdicts are invariant under rescaling") {
    Signature sig = cmltest::sig_xy();
    cmltest::Rng rng(23);
    auto models = collect_models(sig, 3, LawMode::AllLaws);
    for (int i = 0; i < 40; ++i) {
        FPtr phi = cmltest::gen_pco(rng, sig, 3, {});
        for (size_t j = 0; j < models.size(); j += 4) {
            bool base = eval_pco(models[j], phi);
            for (long long k : {2, 3}) CHECK(eval_pco(scale_counts(models[j], k), phi) == base);
        }
    }
}

TEST_CASE("supset-free fragments ignore the laws") {
    Signature sig = cmltest::sig_xy();
    cmltest::Rng rng(29);
    cmltest::PcoOptions opt;
    opt.allow_box = false; // P, P-, P(=>) only
    auto components = enumerate_function_components(sig);
    for (int i = 0; i < 40; ++i) {
        FPtr phi = cmltest::gen_pco(rng, sig, 2, opt);
        // multiteams valid under every component: constant rows work for all
        for (long long s : {0LL, 3LL}) {
            std::vector<bool> verdicts;
            for (const auto& fc : components) {
                CausalMultiteam m = from_counts(sig, fc, {});
                bool compatible = true;
                Assignment a = assignment_at(sig, s);
                for (const auto& t : fc.tables)
                    if (apply_table(sig, t, a) != a.vals[t.var]) compatible = false;
                if (!compatible) continue;
                m.team.add(s, 2);
                verdicts.push_back(eval_pco(m, phi));
            }
            for (bool v : verdicts) CHECK(v == verdicts.front());
        }
    }
}

TEST_CASE("extended comparisons condition each side on its own formula") {
    Signature sig = cmltest::sig_xy();
    // rows: (X=0,Y=0), (X=0,Y=1), (X=1,Y=1)
    CausalMultiteam m = from_counts(sig, {}, {{0, 1}, {1, 1}, {3, 1}});
    FPtr atom = parse("Pr(Y=1 | X=0) >= Pr(Y=1 | X=1)", sig);
    CHECK_FALSE(eval_pco(m, atom)); // 1/2 >= 1 fails

    EvalConfig literal;
    literal.extended_rhs_under_first_condition = true;
    CHECK(eval_pco(m, atom, literal)); // both sides under X=0: 1/2 >= 1/2

    // an empty side makes the atom true
    CHECK(eval_pco(m, parse("Pr(Y=1 | X=0 and X=1) >= Pr(Y=0 | X=1)", sig)));
}

TEST_CASE("evaluation is pure: repeated runs agree") {
    CausalMultiteam m = bundled_model();
    FPtr phi = parse("X=1 => (Pr(Z=3) >= 1 and [Y:=1] Pr(Z=2) >= 1)", *m.sig);
    bool first = eval_pco(m, phi);
    for (int i = 0; i < 3; ++i) CHECK(eval_pco(m, phi) == first);
}

TEST_CASE("immutable models evaluate safely from concurrent threads") {
    Signature sig = cmltest::sig_xy();
    auto models = collect_models(sig, 4, LawMode::AllLaws);
    cmltest::Rng rng(53);
    std::vector<FPtr> formulas;
    for (int i = 0; i < 16; ++i) formulas.push_back(cmltest::gen_pco(rng, sig, 3, {}));

    std::vector<std::vector<bool>> sequential(formulas.size());
    for (size_t f = 0; f < formulas.size(); ++f)
        for (const auto& m : models) sequential[f].push_back(eval_pco(m, formulas[f]));

    std::vector<std::vector<std::vector<bool>>> parallel(4);
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            parallel[w].resize(formulas.size());
            for (size_t f = w; f < formulas.size(); f += 4)
                for (const auto& m : models) parallel[w][f].push_back(eval_pco(m, formulas[f]));
        });
    for (auto& t : workers) t.join();
    for (int w = 0; w < 4; ++w)
        for (size_t f = w; f < formulas.size(); f += 4) CHECK(parallel[w][f] == sequential[f]);
}
