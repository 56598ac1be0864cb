#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cml/enumerate.hpp"
#include "cml/oracle.hpp"
#include "cml/parser.hpp"
#include "support/gen.hpp"

using namespace cml;

TEST_CASE("equivalences from the conditional-probability definitions") {
    Signature sig = cmltest::sig_xy();
    FPtr lhs = parse("Y=0 => Pr(X=1) >= Pr(X=0)", sig);
    FPtr rhs = parse("Pr(X=1 | Y=0) >= Pr(X=0 | Y=0)", sig);
    CHECK(!equiv(lhs, rhs, sig, 4, LawMode::NoLaws));
    CHECK(!equiv(lhs, lhs, sig, 4, LawMode::NoLaws)); // reflexivity
}

TEST_CASE("counterexamples are minimal in enumeration order and self-verifying") {
    Signature sig = cmltest::sig_xy();
    FPtr f = parse("Pr(X=1) >= 1/2", sig);
    FPtr g = parse("X=1", sig);
    auto cex = equiv(f, g, sig, 4, LawMode::NoLaws);
    REQUIRE(cex.has_value());
    // first disagreement: {(X=0,Y=0), (X=1,Y=0)}
    CHECK(cex->model.team.counts == std::map<long long, long long>{{0, 1}, {2, 1}});
    CHECK(cex->lhs);
    CHECK_FALSE(cex->rhs);
    CHECK(validate(cex->model).empty());
    CHECK(eval(cex->model, f) == cex->lhs);
    CHECK(eval(cex->model, g) == cex->rhs);
}

TEST_CASE("law-blind enumeration is rejected for counterfactuals") {
    Signature sig = cmltest::sig_xy();
    FPtr f = parse("[X:=1] Pr(Y=1) >= 1/2", sig);
    FPtr g = parse("Pr(Y=1) >= 1/2", sig);
    CHECK_THROWS_AS(equiv(f, g, sig, 3, LawMode::NoLaws), InputError);
    CHECK_NOTHROW(equiv(f, g, sig, 2, LawMode::AllLaws));
    FunctionComponent laws;
    laws.add(FunctionTable{1, {0, 1}});
    CHECK_NOTHROW(equiv(f, g, sig, 2, LawMode::FixedLaws, laws));
}

TEST_CASE("set agreement flags a deliberate index mismatch") {
    Signature sig = cmltest::sig_xy();
    FPtr f = parse("Pr(X=1) >= 1/2", sig);

    ProbabilitySet wrong = empty_set(4);
    LinIneq e;
    e.coeffs = {Rational(1), Rational(0), Rational(0), Rational(0)};
    e.cmp = Cmp::Ge;
    e.bound = Rational(1, 2);
    wrong.systems.push_back(IneqSystem{{e}});
    auto cex = check_set_agreement(f, wrong, sig, 3, LawMode::NoLaws);
    REQUIRE(cex.has_value());

    ProbabilitySet right = empty_set(4);
    LinIneq e2;
    e2.coeffs = {Rational(0), Rational(0), Rational(1), Rational(1)};
    e2.cmp = Cmp::Ge;
    e2.bound = Rational(1, 2);
    right.systems.push_back(IneqSystem{{e2}});
    CHECK(!check_set_agreement(f, right, sig, 4, LawMode::NoLaws));
}

TEST_CASE("enumeration realizes exactly the bounded-denominator grid") {
    Signature sig = cmltest::sig_v3();
    const long long N = 6;
    std::set<std::vector<Rational>> seen;
    for (const auto& m : collect_models(sig, N, LawMode::NoLaws))
        if (!m.empty()) seen.insert(probability_vector(m));

    std::set<std::vector<Rational>> grid;
    enumerate_count_vectors(3, N, [&](const std::vector<long long>& counts) {
        long long total = 0;
        for (long long c : counts) total += c;
        std::vector<Rational> p;
        for (long long c : counts) p.emplace_back(c, total);
        grid.insert(p);
        return true;
    });
    CHECK(seen == grid);
    // every reduced vector has denominator at most N
    for (const auto& p : seen)
        for (const auto& x : p) CHECK(x.den() <= N);
}
