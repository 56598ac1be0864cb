#pragma once

#include <optional>

#include "cml/enumerate.hpp"
#include "cml/eval.hpp"
#include "cml/geometry.hpp"

namespace cml {

// A disagreeing model, minimal in enumeration order, with both verdicts.
struct Counterexample {
    CausalMultiteam model;
    bool lhs = false;
    bool rhs = false;
};

// Exhaustive semantic equivalence over all enumerated models. Counterfactuals
// make a formula law-sensitive, so law-blind (no-laws) enumeration is
// rejected for them; all-laws or an explicit fixed-laws choice is required.
// Returned counterexamples are re-checked before being reported.
std::optional<Counterexample> equiv(const FPtr& f, const FPtr& g, const Signature& sig,
                                    long long max_size, LawMode mode,
                                    const std::optional<FunctionComponent>& laws = {},
                                    const EnumGuard& guard = {}, const EvalConfig& cfg = {});

// For every enumerated nonempty model, the formula verdict must equal
// membership of its probability vector; every empty model must satisfy f.
std::optional<Counterexample> check_set_agreement(const FPtr& f, const ProbabilitySet& set,
                                                  const Signature& sig, long long max_size,
                                                  LawMode mode,
                                                  const std::optional<FunctionComponent>& laws = {},
                                                  const EnumGuard& guard = {},
                                                  const EvalConfig& cfg = {});

} // namespace cml
