#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cml/atoms.hpp"
#include "cml/enumerate.hpp"
#include "cml/eval.hpp"
#include "cml/fragment.hpp"
#include "cml/parser.hpp"
#include "cml/printer.hpp"
#include "support/gen.hpp"

using namespace cml;

namespace {

CausalMultiteam from_counts(const Signature& sig,
                            const std::vector<std::pair<long long, long long>>& counts) {
    CausalMultiteam m;
    m.sig = std::make_shared<const Signature>(sig);
    for (auto [s, c] : counts) m.team.add(s, c);
    return m;
}

} // namespace

TEST_CASE("macro expansions have the documented shapes") {
    Signature sig = cmltest::sig_xy();

    FPtr dep = expand_atom(AtomKind::Dep, {0}, {1}, {}, sig);
    CHECK(print(dep, sig) ==
          "(((X=0 => Y=0) gor (X=0 => Y=1)) and ((X=1 => Y=0) gor (X=1 => Y=1)))");
    CHECK(classify_fragment(dep) == FragmentLabel::PSup);

    FPtr mi = expand_atom(AtomKind::Mi, {0}, {1}, {}, sig);
    CHECK(print(mi, sig) == "(Pr(X=0) == Pr(Y=0) and Pr(X=1) == Pr(Y=1))");

    FPtr indep = expand_atom(AtomKind::Indep, {0}, {1}, {}, sig);
    CHECK(classify_fragment(indep) == FragmentLabel::Extended);

    FPtr cindep = expand_atom(AtomKind::Cindep, {0}, {1}, {2}, cmltest::sig_xyz());
    CHECK(classify_fragment(cindep) == FragmentLabel::Extended);

    CHECK_THROWS_AS(expand_atom(AtomKind::Dep, {}, {1}, {}, sig), InputError);
    CHECK_THROWS_AS(expand_atom(AtomKind::Cindep, {0}, {1}, {}, sig), InputError);
    CHECK_THROWS_AS(expand_atom(AtomKind::Dep, {0, 0}, {1}, {}, sig), InputError);
}

TEST_CASE("marginal identity across ranges of different sizes uses Pr(bot)") {
    Signature sig({"X", "Y"}, {{Value(0LL), Value(1LL), Value(2LL)}, {Value(0LL), Value(1LL)}});
    FPtr mi = expand_atom(AtomKind::Mi, {0}, {1}, {}, sig);
    // tuple X=2 has no Y counterpart: Pr(X=2) == Pr(bot) forces probability 0
    CausalMultiteam balanced = from_counts(sig, {{0 * 2 + 1, 1}, {1 * 2 + 0, 1}}); // (0,1), (1,0)
    CHECK(eval_pco(balanced, mi));
    CausalMultiteam with_two = from_counts(sig, {{2 * 2 + 0, 1}});
    CHECK_FALSE(eval_pco(with_two, mi));
}

TEST_CASE("direct checks on handpicked multiteams") {
    Signature sig = cmltest::sig_xy();

    // dep: rows agreeing on X agree on Y, multiplicity-blind
    CHECK(direct_check(AtomKind::Dep, {0}, {1}, {}, from_counts(sig, {{0, 2}, {3, 1}})));
    CHECK_FALSE(direct_check(AtomKind::Dep, {0}, {1}, {}, from_counts(sig, {{0, 1}, {1, 1}})));

    // mi: both marginals uniform
    CHECK(direct_check(AtomKind::Mi, {0}, {1}, {}, from_counts(sig, {{1, 1}, {2, 1}})));

    // indep: product distribution vs diagonal
    CHECK(direct_check(AtomKind::Indep, {0}, {1}, {},
                       from_counts(sig, {{0, 1}, {1, 1}, {2, 1}, {3, 1}})));
    CHECK_FALSE(direct_check(AtomKind::Indep, {0}, {1}, {}, from_counts(sig, {{0, 1}, {3, 1}})));

    // empty multiteam satisfies every kind
    for (AtomKind k : {AtomKind::Dep, AtomKind::Mi, AtomKind::Indep})
        CHECK(direct_check(k, {0}, {1}, {}, from_counts(sig, {})));
}

TEST_CASE("conditional independence with a constant slice reduces to independence") {
    Signature sig = cmltest::sig_xyz();
    cmltest::Rng rng(77);
    auto models = collect_models(sig, 4, LawMode::NoLaws, {}, {8, 200000});
    int used = 0;
    for (const auto& m : models) {
        if (m.empty()) continue;
        bool z_constant = true;
        int zval = -1;
        for (long long s : m.support()) {
            int v = assignment_at(sig, s).vals[2];
            if (zval == -1) zval = v;
            if (v != zval) z_constant = false;
        }
        if (!z_constant) continue;
        CHECK(direct_check(AtomKind::Cindep, {0}, {1}, {2}, m) ==
              direct_check(AtomKind::Indep, {0}, {1}, {}, m));
        if (++used > 300) break;
    }
    CHECK(used > 50);
    (void)rng;
}

TEST_CASE("macro verdicts equal the direct checks on all small models") {
    Signature sig = cmltest::sig_xy();
    FPtr dep = expand_atom(AtomKind::Dep, {0}, {1}, {}, sig);
    FPtr mi = expand_atom(AtomKind::Mi, {0}, {1}, {}, sig);
    FPtr indep = expand_atom(AtomKind::Indep, {0}, {1}, {}, sig);
    for (const auto& m : collect_models(sig, 3, LawMode::NoLaws)) {
        CHECK(eval_pco(m, dep) == direct_check(AtomKind::Dep, {0}, {1}, {}, m));
        CHECK(eval_pco(m, mi) == direct_check(AtomKind::Mi, {0}, {1}, {}, m));
        CHECK(eval_pco(m, indep) == direct_check(AtomKind::Indep, {0}, {1}, {}, m));
    }
}

TEST_CASE("dependence is invariant under rescaling and change of laws") {
    Signature sig = cmltest::sig_xy();
    for (const auto& m : collect_models(sig, 3, LawMode::AllLaws)) {
        bool base = direct_check(AtomKind::Dep, {0}, {1}, {}, m);
        CHECK(direct_check(AtomKind::Dep, {0}, {1}, {}, scale_counts(m, 3)) == base);
        CausalMultiteam stripped = m;
        stripped.laws = FunctionComponent{};
        CHECK(direct_check(AtomKind::Dep, {0}, {1}, {}, stripped) == base);
        FPtr dep = expand_atom(AtomKind::Dep, {0}, {1}, {}, sig);
        CHECK(eval_pco(m, dep) == eval_pco(stripped, dep));
    }
}

TEST_CASE("dependence agrees with self-independence given the determining tuple") {
    Signature sig = cmltest::sig_xy();
    for (const auto& m : collect_models(sig, 4, LawMode::NoLaws))
        CHECK(direct_check(AtomKind::Dep, {0}, {1}, {}, m) ==
              direct_check(AtomKind::Cindep, {1}, {1}, {0}, m));
}

TEST_CASE("surface syntax lowers through the macros") {
    Signature sig = cmltest::sig_xyz();
    CHECK(equal(parse("dep(X;Y)", sig), expand_atom(AtomKind::Dep, {0}, {1}, {}, sig)));
    CHECK(equal(parse("X ~ Y", sig), expand_atom(AtomKind::Mi, {0}, {1}, {}, sig)));
    CHECK(equal(parse("X, Y ~ Y, Z", sig), expand_atom(AtomKind::Mi, {0, 1}, {1, 2}, {}, sig)));
    CHECK(equal(parse("indep(X;Y)", sig), expand_atom(AtomKind::Indep, {0}, {1}, {}, sig)));
    CHECK(equal(parse("indep(X;Y|Z)", sig), expand_atom(AtomKind::Cindep, {0}, {1}, {2}, sig)));
    // macros compose with the probabilistic connectives
    CHECK(eval_pco(from_counts(sig, {}), parse("[X:=1] dep(X;Y)", sig)));
}
