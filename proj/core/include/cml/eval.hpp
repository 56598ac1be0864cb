#pragma once

#include "cml/formula.hpp"
#include "cml/model.hpp"

namespace cml {

struct EvalConfig {
    enum class CoStrategy { Rowwise, SplitSearch };

    CoStrategy co_strategy = CoStrategy::Rowwise;
    // SplitSearch and the causal-team evaluator enumerate splits; beyond this
    // many rows they refuse to run.
    int split_bound = 12;
    // The right probability of a mixed-condition comparison Pr(a|c) > Pr(b|d)
    // is conditioned on d; setting this evaluates it under c instead (the
    // literal reading of the defining clause).
    bool extended_rhs_under_first_condition = false;
    bool trace = false;
};

// Classical satisfaction of a flat formula by a single assignment under the
// given laws.
bool singleton_sat(const Signature& sig, const FunctionComponent& laws, const Assignment& s,
                   const FPtr& alpha);

// Rows whose singletons satisfy alpha; same laws.
CausalMultiteam observe(const CausalMultiteam& m, const FPtr& alpha);

// P_T(alpha) = |T^alpha| / |T|; throws InputError on the empty multiteam.
Rational probability(const CausalMultiteam& m, const FPtr& alpha);

// Flat-layer satisfaction. Rowwise is the production path; SplitSearch
// implements the disjoint-union tensor clause literally.
bool eval_co(const CausalMultiteam& m, const FPtr& alpha, const EvalConfig& cfg = {});

// Causal-team satisfaction on the support Team(T): set-based, lax tensor.
bool eval_ct(const CausalMultiteam& m, const FPtr& alpha, const EvalConfig& cfg = {});

// Probabilistic-layer satisfaction, including extended conditional atoms.
// Accepts abbreviated comparators directly (their semantics agree with the
// core expansion). Flat formulas are routed through eval_co.
bool eval_pco(const CausalMultiteam& m, const FPtr& phi, const EvalConfig& cfg = {});

// eval_pco / eval_co depending on the layer of f.
bool eval(const CausalMultiteam& m, const FPtr& f, const EvalConfig& cfg = {});

} // namespace cml
