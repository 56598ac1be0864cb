#pragma once

#include "cml/formula.hpp"
#include "cml/signature.hpp"

namespace cml {

// Dual negation: holds of a multiteam iff every row refutes alpha. De Morgan
// over literals, and, or; falls back to alpha => bot when alpha contains
// supset or boxright.
FPtr dual(const FPtr& alpha, const Signature& sig);

// Rewrites to core syntax: probabilistic atoms only with >= and >, no
// conditional atoms except mixed-condition comparisons (which have no PCO
// definition and stay as extended atoms, comparator normalized to >=/>).
FPtr expand_abbreviations(const FPtr& f, const Signature& sig);

} // namespace cml
