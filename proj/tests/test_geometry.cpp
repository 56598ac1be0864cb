#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cml/abbrev.hpp"
#include "cml/enumerate.hpp"
#include "cml/eval.hpp"
#include "cml/fragment.hpp"
#include "cml/json_io.hpp"
#include "cml/oracle.hpp"
#include "cml/parser.hpp"
#include "cml/printer.hpp"
#include "support/gen.hpp"

using namespace cml;

namespace {

LinIneq make_ineq(std::vector<long long> coeffs, Cmp cmp, Rational b) {
    LinIneq e;
    for (long long c : coeffs) e.coeffs.emplace_back(c);
    e.cmp = cmp;
    e.bound = b;
    return e;
}

std::vector<Rational> point(std::vector<Rational> p) { return p; }

std::vector<std::vector<Rational>> grid_points(long long n, long long max_den) {
    std::vector<std::vector<Rational>> out;
    enumerate_count_vectors(n, max_den, [&](const std::vector<long long>& counts) {
        long long total = 0;
        for (long long c : counts) total += c;
        std::vector<Rational> p;
        for (long long c : counts) p.emplace_back(c, total);
        out.push_back(std::move(p));
        return true;
    });
    return out;
}

} // namespace

TEST_CASE("canonicalization and classification") {
    CHECK(classify_ineq(make_ineq({1, 1, 0}, Cmp::Ge, Rational(1, 2))) == IneqClass::Monic);
    CHECK(classify_ineq(make_ineq({1, 0, -1}, Cmp::Le, Rational(0))) == IneqClass::SignedMonic);
    CHECK(classify_ineq(make_ineq({2, 2, -1}, Cmp::Le, Rational(0))) == IneqClass::SignedBinary);
    CHECK(classify_ineq(make_ineq({2, -3, 0}, Cmp::Le, Rational(0))) == IneqClass::SignedBinary);
    CHECK(classify_ineq(make_ineq({1, 2, 0}, Cmp::Le, Rational(1))) == IneqClass::General);

    // canonicalization divides by the gcd, so general-looking input may land lower
    CHECK(classify_ineq(make_ineq({2, -2, 0}, Cmp::Lt, Rational(1))) == IneqClass::SignedMonic);
    CHECK(classify_ineq(make_ineq({0, 4, 0}, Cmp::Ge, Rational(2))) == IneqClass::Monic);

    LinIneq frac;
    frac.coeffs = {Rational(1, 2), Rational(-1, 2), Rational(0)};
    frac.cmp = Cmp::Le;
    frac.bound = Rational(1, 4);
    LinIneq canon = canonical(frac);
    CHECK(canon.coeffs == std::vector<Rational>{Rational(1), Rational(-1), Rational(0)});
    CHECK(canon.bound == Rational(1, 2));
}

TEST_CASE("set algebra follows the complement/union/intersection rules") {
    ProbabilitySet half = empty_set(2);
    half.systems.push_back(IneqSystem{{make_ineq({1, 0}, Cmp::Ge, Rational(1, 2))}});

    ProbabilitySet comp = complement(half);
    REQUIRE(comp.systems.size() == 1);
    REQUIRE(comp.systems[0].ineqs.size() == 1);
    CHECK(comp.systems[0].ineqs[0].cmp == Cmp::Lt);

    ProbabilitySet other = empty_set(2);
    other.systems.push_back(IneqSystem{{make_ineq({0, 1}, Cmp::Gt, Rational(1, 3))}});
    ProbabilitySet inter = set_intersect(half, other);
    REQUIRE(inter.systems.size() == 1);
    CHECK(inter.systems[0].ineqs.size() == 2);

    CHECK(set_union(half, empty_set(2)).systems.size() == 1);
    CHECK(member(point({Rational(1, 2), Rational(1, 2)}), whole_simplex(2)));
    CHECK_FALSE(member(point({Rational(1, 2), Rational(1, 2)}), empty_set(2)));

    // the three operations stay within the class; complement is a pointwise
    // involution
    cmltest::Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        IneqClass cls = i % 2 ? IneqClass::Monic : IneqClass::SignedMonic;
        ProbabilitySet s = cmltest::gen_system(rng, cls, 3);
        ProbabilitySet t = cmltest::gen_system(rng, cls, 3);
        ProbabilitySet c = complement(s);
        CHECK(ineq_class_le(classify_set(c), cls));
        CHECK(ineq_class_le(classify_set(set_union(s, t)), cls));
        CHECK(ineq_class_le(classify_set(set_intersect(s, t)), cls));
        ProbabilitySet cc = complement(c);
        for (const auto& p : grid_points(3, 4)) {
            CHECK(member(p, c) == !member(p, s));
            CHECK(member(p, cc) == member(p, s));
            CHECK(member(p, set_union(s, t)) == (member(p, s) || member(p, t)));
            CHECK(member(p, set_intersect(s, t)) == (member(p, s) && member(p, t)));
        }
    }
}

TEST_CASE("membership is exact") {
    ProbabilitySet s1 = empty_set(3);
    s1.systems.push_back(IneqSystem{{make_ineq({1, -1, 0}, Cmp::Le, Rational(0))}});
    CHECK(member(point({Rational(1, 2), Rational(1, 2), Rational(0)}), s1));

    ProbabilitySet s2 = empty_set(3);
    s2.systems.push_back(IneqSystem{{make_ineq({1, 0, 0}, Cmp::Lt, Rational(1))}});
    CHECK_FALSE(member(point({Rational(1), Rational(0), Rational(0)}), s2));

    ProbabilitySet s3 = empty_set(3);
    s3.systems.push_back(IneqSystem{{make_ineq({2, 2, -1}, Cmp::Le, Rational(0))}});
    CHECK_FALSE(member(point({Rational(1, 3), Rational(1, 3), Rational(1, 3)}), s3));

    CHECK_THROWS_AS(member(point({Rational(1, 2), Rational(1, 2)}), s1), InputError);
    CHECK_THROWS_AS(member(point({Rational(1, 2), Rational(1, 4), Rational(1, 8)}), s1),
                    InputError);
}

TEST_CASE("variable elimination keeps the simplex solutions") {
    LinIneq e = make_ineq({1, -1, 1}, Cmp::Le, Rational(1, 3));
    LinIneq out = eliminate_variable(e, 2);
    CHECK(out.coeffs == std::vector<Rational>{Rational(0), Rational(-1), Rational(0)});
    CHECK(out.bound == Rational(-1, 3)); // (b-1)/2

    LinIneq e2 = make_ineq({1, 0}, Cmp::Le, Rational(1, 2));
    LinIneq out2 = eliminate_variable(e2, 0);
    CHECK(out2.coeffs == std::vector<Rational>{Rational(0), Rational(-1)});
    CHECK(out2.bound == Rational(-1, 2));

    CHECK_THROWS_AS(eliminate_variable(e, 1000), InputError);
    CHECK_THROWS_AS(eliminate_variable(make_ineq({1, 0}, Cmp::Le, Rational(0)), 1), InputError);

    cmltest::Rng rng(8);
    for (int i = 0; i < 40; ++i) {
        LinIneq r = cmltest::gen_ineq(rng, IneqClass::SignedBinary, 3);
        for (size_t idx = 0; idx < 3; ++idx) {
            if (canonical(r).coeffs[idx].is_zero()) continue;
            LinIneq el = eliminate_variable(r, idx);
            for (const auto& p : grid_points(3, 5)) CHECK(ineq_sat(p, r) == ineq_sat(p, el));
        }
    }
}

TEST_CASE("extraction of atoms and connectives") {
    Signature sig = cmltest::sig_xy();

    ProbabilitySet s = extract(parse("Pr(X=1) >= 1/2", sig), sig);
    REQUIRE(s.systems.size() == 1);
    REQUIRE(s.systems[0].ineqs.size() == 1);
    CHECK(s.systems[0].ineqs[0].coeffs ==
          std::vector<Rational>{Rational(0), Rational(0), Rational(1), Rational(1)});
    CHECK(s.systems[0].ineqs[0].bound == Rational(1, 2));

    // overlapping states cancel in comparisons
    ProbabilitySet c = extract(parse("Pr(X=1) >= Pr(Y=1)", sig), sig);
    REQUIRE(c.systems.size() == 1);
    CHECK(c.systems[0].ineqs[0].coeffs ==
          std::vector<Rational>{Rational(0), Rational(-1), Rational(1), Rational(0)});
    CHECK(c.systems[0].ineqs[0].bound == Rational(0));

    // flat formulas extract as probability-one statements
    ProbabilitySet lit = extract(parse("X=1", sig), sig);
    CHECK(classify_set(lit) == IneqClass::Monic);
    CHECK(member(point({Rational(0), Rational(0), Rational(1, 2), Rational(1, 2)}), lit));
    CHECK_FALSE(member(point({Rational(1, 2), Rational(0), Rational(1, 2), Rational(0)}), lit));

    CHECK_THROWS_AS(extract(parse("Pr(X=1) <= 1/2", sig), sig), InputError); // not core
    CHECK_THROWS_AS(extract(parse("[X:=1] Pr(Y=1) >= 1/2", sig), sig), InputError); // needs laws
}

TEST_CASE("extraction agrees with evaluation per fragment") {
    Signature sig = cmltest::sig_xy();
    cmltest::Rng rng(11);
    struct Case {
        cmltest::PcoOptions opt;
        IneqClass bound;
    };
    std::vector<Case> cases{
        {{false, false, false, false, 2}, IneqClass::Monic},
        {{false, false, true, false, 2}, IneqClass::SignedMonic},
        {{true, false, true, false, 2}, IneqClass::SignedBinary},
    };
    for (const auto& c : cases)
        for (int i = 0; i < 25; ++i) {
            cmltest::Rng local(1000 * (&c - cases.data()) + i);
            FPtr f = cmltest::gen_pco(local, sig, 2, c.opt);
            ProbabilitySet s = extract(f, sig);
            CHECK(ineq_class_le(classify_set(s), c.bound));
            CHECK(!check_set_agreement(f, s, sig, 4, LawMode::NoLaws));
        }
    (void)rng;
}

TEST_CASE("extraction under fixed laws covers counterfactual fragments") {
    Signature sig = cmltest::sig_xy();
    FunctionComponent laws;
    laws.add(FunctionTable{1, {0, 1}}); // Y := X
    FPtr f = parse("[X:=1] Pr(Y=1) >= 1/2", sig);
    ProbabilitySet s = extract(f, sig, laws);
    CHECK(!check_set_agreement(f, s, sig, 4, LawMode::FixedLaws, laws));

    auto components = enumerate_function_components(sig);
    for (int i = 0; i < 30; ++i) {
        cmltest::Rng rng(6200 + i);
        FPtr phi = cmltest::gen_pco(rng, sig, 2, {});
        const auto& fc = components[i % components.size()];
        ProbabilitySet set = extract(phi, sig, fc);
        CHECK(!check_set_agreement(phi, set, sig, 4, LawMode::FixedLaws, fc));
    }
}

TEST_CASE("the selective-implication witness from the worked example") {
    Signature sig = cmltest::sig_v3();
    FPtr phi = expand_abbreviations(
        parse("(V=0 or V=1 or V=2) => Pr(V=0 or V=1) <= 1/3", sig), sig);
    ProbabilitySet raw = extract(phi, sig);
    CHECK(raw.systems.size() == 2); // vacuous branch plus the real one

    ProbabilitySet reference = empty_set(3);
    reference.systems.push_back(IneqSystem{{make_ineq({2, 2, -1}, Cmp::Le, Rational(0))}});
    for (const auto& p : grid_points(3, 8)) CHECK(member(p, raw) == member(p, reference));

    // the vacuous branch is subsumed on the grid
    ProbabilitySet slim = simplify_on_grid(raw, 8);
    CHECK(slim.systems.size() == 1);
    for (const auto& p : grid_points(3, 8)) CHECK(member(p, slim) == member(p, reference));

    // the oracle agrees too, with the reference set substituted for the raw one
    CHECK(!check_set_agreement(phi, reference, sig, 6, LawMode::NoLaws));
}

TEST_CASE("synthesis produces the classic forms") {
    Signature sig = cmltest::sig_v3();

    ProbabilitySet monic = empty_set(3);
    monic.systems.push_back(IneqSystem{{make_ineq({1, 0, 0}, Cmp::Ge, Rational(1, 2))}});
    CHECK(print(synth(monic, IneqClass::Monic, sig), sig) == "Pr(V=0) >= 1/2");

    ProbabilitySet cmp = empty_set(3);
    cmp.systems.push_back(IneqSystem{{make_ineq({1, -1, 0}, Cmp::Le, Rational(0))}});
    CHECK(print(synth(cmp, IneqClass::SignedMonic, sig), sig) == "Pr(V=0) <= Pr(V=1)");

    ProbabilitySet sb = empty_set(3);
    sb.systems.push_back(IneqSystem{{make_ineq({-1, 2, 0}, Cmp::Le, Rational(0))}});
    CHECK(print(synth(sb, IneqClass::SignedBinary, sig), sig) ==
          "((V=0 or V=1) => Pr(V=1) <= 1/3)");

    // bounds outside [0,1] clamp to constants
    ProbabilitySet always = empty_set(3);
    always.systems.push_back(IneqSystem{{make_ineq({1, 1, 0}, Cmp::Ge, Rational(-1, 2))}});
    FPtr top = synth(always, IneqClass::Monic, sig);
    for (const auto& m : collect_models(sig, 3, LawMode::NoLaws)) CHECK(eval_pco(m, top));

    // class of the input must not exceed the target
    CHECK_THROWS_AS(synth(sb, IneqClass::SignedMonic, sig), InputError);
    CHECK_THROWS_AS(synth(sb, IneqClass::General, sig), InputError);

    // mixed signs with nonzero bound and a zero coefficient are not definable
    ProbabilitySet bad = empty_set(3);
    bad.systems.push_back(IneqSystem{{make_ineq({1, -1, 0}, Cmp::Le, Rational(1, 2))}});
    CHECK_THROWS_WITH_AS(synth(bad, IneqClass::SignedMonic, sig),
                         doctest::Contains("not definable"), InputError);
}

TEST_CASE("synthesis round trip on random in-class systems") {
    Signature sig = cmltest::sig_v3();
    for (IneqClass cls : {IneqClass::Monic, IneqClass::SignedMonic, IneqClass::SignedBinary}) {
        for (int i = 0; i < 25; ++i) {
            cmltest::Rng rng(9000 + 100 * static_cast<int>(cls) + i);
            ProbabilitySet s = cmltest::gen_system(rng, cls, 3);
            FPtr f = synth(s, cls, sig);
            CHECK(!check_set_agreement(f, s, sig, 5, LawMode::NoLaws));
        }
    }
}

TEST_CASE("discriminant of the undefinability conic") {
    CHECK(conic_discriminant(Rational(1, 2)) == Rational(-1));
    CHECK(conic_discriminant(Rational(1, 4)) == Rational(-1, 2));
    cmltest::Rng rng(12);
    for (int i = 0; i < 30; ++i) {
        int q = 2 + rng.below(40);
        int p = 1 + rng.below(q - 1);
        Rational d(p, q);
        CHECK(conic_discriminant(d) == Rational(-2) * d);
    }
    CHECK_THROWS_AS(conic_discriminant(Rational(0)), InputError);
    CHECK_THROWS_AS(conic_discriminant(Rational(1)), InputError);
    CHECK_THROWS_AS(conic_discriminant(Rational(3, 2)), InputError);
}

TEST_CASE("inequality-system files round trip") {
    ProbabilitySet s = empty_set(3);
    s.systems.push_back(IneqSystem{{make_ineq({2, 2, -1}, Cmp::Le, Rational(0)),
                                    make_ineq({1, 0, 0}, Cmp::Gt, Rational(1, 3))}});
    ProbabilitySet again = load_system_string(system_to_json_string(s));
    CHECK(again.n == 3);
    REQUIRE(again.systems.size() == 1);
    CHECK(again.systems[0].ineqs.size() == 2);
    CHECK(again.systems[0].ineqs[0].coeffs == s.systems[0].ineqs[0].coeffs);
    CHECK(again.systems[0].ineqs[1].bound == Rational(1, 3));

    CHECK_THROWS_AS(load_system_string("{\"systems\": []}"), InputError);
    CHECK_THROWS_AS(
        load_system_string(
            "{\"n\": 2, \"systems\": [{\"ineqs\": [{\"coeffs\": [\"1\"], \"cmp\": \"<=\", "
            "\"b\": \"0\"}]}]}"),
        InputError);
}
