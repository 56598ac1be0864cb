#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cml/model.hpp"
#include "cml/rational.hpp"
#include "cml/signature.hpp"

namespace cml {

enum class Cmp { Ge, Gt, Le, Lt, Eq, Ne };

const char* cmp_str(Cmp c);
bool cmp_holds(const Rational& l, Cmp c, const Rational& r);
// >= <-> <=, > <-> <, = and != fixed (swaps the two sides of a comparison)
Cmp cmp_swap(Cmp c);

enum class FKind {
    Lit,      // X=v or X!=v
    And,      // both levels
    Or,       // tensor disjunction, flat level only
    Gor,      // global disjunction, probabilistic level only
    Imp,      // selective implication, antecedent is flat
    Cf,       // [X:=x] body, either level
    PrEval,   // Pr(co) cmp bound
    PrCmp,    // Pr(co) cmp Pr(co)
    CondEval, // Pr(co | co) cmp bound
    CondCmp,  // Pr(co | co?) cmp Pr(co | co?), absent condition = unconditioned
};

struct Formula;
using FPtr = std::shared_ptr<const Formula>;

struct Formula {
    FKind kind;

    // Lit
    int var = -1;
    int val = -1;
    bool neq = false;

    // And/Or/Gor/Imp: a, b. Imp: a antecedent, b consequent.
    // Cf: a body. PrEval/CondEval: a argument. PrCmp/CondCmp: a, b arguments.
    FPtr a, b;
    FPtr cond, cond2; // CondEval: cond; CondCmp: cond on a, cond2 on b

    std::vector<Intervention> ivs; // Cf
    Cmp cmp = Cmp::Ge;
    Rational bound;
};

FPtr f_lit(int var, int val, bool neq = false);
FPtr f_and(FPtr a, FPtr b);
FPtr f_or(FPtr a, FPtr b);
FPtr f_gor(FPtr a, FPtr b);
FPtr f_imp(FPtr antecedent, FPtr consequent);
FPtr f_cf(std::vector<Intervention> ivs, FPtr body);
FPtr f_pr(FPtr arg, Cmp c, Rational bound);
FPtr f_prcmp(FPtr a, Cmp c, FPtr b);
FPtr f_cond(FPtr arg, FPtr cond, Cmp c, Rational bound);
FPtr f_condcmp(FPtr a, FPtr cond, Cmp c, FPtr b, FPtr cond2);

// Left folds; a single element is returned as-is. Empty input is an error.
FPtr f_and_all(const std::vector<FPtr>& fs);
FPtr f_or_all(const std::vector<FPtr>& fs);
FPtr f_gor_all(const std::vector<FPtr>& fs);

// Derived constants over the signature's first variable.
FPtr co_top(const Signature& sig); // X=v0 or X!=v0
FPtr co_bot(const Signature& sig); // X=v0 and X!=v0
FPtr pco_top(const Signature& sig); // Pr(co_top) >= 0
FPtr pco_bot(const Signature& sig); // X=v0 and X!=v0 as a literal conjunction

// State formula \hat alpha_s: one equality literal per variable, in order.
FPtr state_formula(const Signature& sig, const Assignment& s);
FPtr state_formula(const Signature& sig, long long state);
// Tensor disjunction of state formulas; empty set gives co_bot.
FPtr states_disjunction(const Signature& sig, const std::vector<long long>& states);

bool equal(const FPtr& a, const FPtr& b);

// Preorder over the whole tree, including Pr arguments and conditions.
void walk(const FPtr& f, const std::function<void(const Formula&)>& fn);

bool is_co(const FPtr& f);      // no probabilistic atom, no global disjunction
bool has_boxright(const FPtr& f);
bool has_supset(const FPtr& f); // counts expandable conditional atoms as supset
bool has_comparison(const FPtr& f);
bool has_extended(const FPtr& f);       // conditional comparison with mixed conditions
bool has_abbreviation(const FPtr& f);   // non-core comparator or conditional atom
// Expandable: CondEval always; CondCmp when both sides carry structurally
// equal conditions (or none).
bool cond_expandable(const Formula& f);

// Two-level and range discipline against a signature; throws InputError.
void check_wellformed(const FPtr& f, const Signature& sig);

} // namespace cml
