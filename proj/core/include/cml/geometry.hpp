#pragma once

#include <optional>
#include <vector>

#include "cml/formula.hpp"
#include "cml/model.hpp"
#include "cml/rational.hpp"

namespace cml {

// a_1 eps_1 + ... + a_n eps_n  cmp  b, interpreted within the standard
// simplex (entries >= 0 and summing to 1 are implicit, never materialized).
struct LinIneq {
    std::vector<Rational> coeffs;
    Cmp cmp = Cmp::Le; // Ge, Gt, Le, Lt only
    Rational bound;
};

// Integer coefficients with gcd 1 after clearing denominators; the bound
// scales along and stays rational. Classification is defined on this form.
LinIneq canonical(const LinIneq& e);

enum class IneqClass { Monic, SignedMonic, SignedBinary, General };

const char* ineq_class_str(IneqClass c);
bool ineq_class_le(IneqClass a, IneqClass b);

// Least class containing the canonical form: coefficients in {0,1} (monic),
// {0,1,-1} (signed monic), one nonpositive and one nonnegative value on
// disjoint supports (signed binary), anything else (general).
IneqClass classify_ineq(const LinIneq& e);

// Conjunction of inequalities; an empty list is the whole simplex.
struct IneqSystem {
    std::vector<LinIneq> ineqs;
};

// Finite union of systems; no systems at all is the empty set.
struct ProbabilitySet {
    long long n = 0;
    std::vector<IneqSystem> systems;
};

IneqClass classify_set(const ProbabilitySet& s);

ProbabilitySet whole_simplex(long long n);
ProbabilitySet empty_set(long long n);

ProbabilitySet complement(const ProbabilitySet& s);
ProbabilitySet set_union(const ProbabilitySet& a, const ProbabilitySet& b);
ProbabilitySet set_intersect(const ProbabilitySet& a, const ProbabilitySet& b);

// Exact membership of a simplex point (validated: entries >= 0, sum 1).
bool member(const std::vector<Rational>& p, const ProbabilitySet& s);
bool ineq_sat(const std::vector<Rational>& p, const LinIneq& e);

// Substitutes eps_idx = 1 - sum of the others and renormalizes; the result
// has coefficient 0 at idx and the same solutions within the simplex.
LinIneq eliminate_variable(const LinIneq& e, size_t idx);

// Formula -> probability set, by structural induction. Requires core syntax
// (expand abbreviations first). Fragments with boxright need laws: the
// formula is relativized to them first, and the contract then holds on
// models carrying exactly those laws.
ProbabilitySet extract(const FPtr& f, const Signature& sig,
                       const std::optional<FunctionComponent>& laws = {});

// Probability set -> formula of the fragment matching the target class:
// monic -> evaluation atoms, signed monic -> adds comparison atoms, signed
// binary -> adds selective implications. Inequalities mixing signs with a
// nonzero bound and a zero coefficient have no formula in these fragments
// and are rejected.
FPtr synth(const ProbabilitySet& s, IneqClass target, const Signature& sig);

// Discriminant of the conic section arising from a one-sided conditional
// comparison at section value delta in (0,1); equals -2*delta.
Rational conic_discriminant(const Rational& delta);

// Heuristic cleanup on a bounded-denominator grid: drops union branches whose
// grid points are covered by the remaining branches. Grid-exact only.
ProbabilitySet simplify_on_grid(const ProbabilitySet& s, long long max_den);

} // namespace cml
