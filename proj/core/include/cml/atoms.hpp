#pragma once

#include <vector>

#include "cml/formula.hpp"
#include "cml/model.hpp"

namespace cml {

enum class AtomKind { Dep, Mi, Indep, Cindep };

// Macro expansion of the team-semantics atoms over variable tuples:
//   dep(X;Y)       conj_x gor_y (X=x => Y=y)                      (supset fragment)
//   mi  X ~ Y      conj_{x in Ran(X) u Ran(Y)} Pr(X=x) == Pr(Y=x) (comparisons)
//   indep(X;Y)     conj_{x,y} Pr(X=x) == Pr(X=x | Y=y)            (extended)
//   cindep(X;Y|Z)  conj_{x,y,z} Pr(X=x|Z=z) == Pr(X=x | Y=y,Z=z)  (extended)
// Tuples are variable indices into sig; zs only for Cindep.
FPtr expand_atom(AtomKind kind, const std::vector<int>& xs, const std::vector<int>& ys,
                 const std::vector<int>& zs, const Signature& sig);

// Independent combinatorial/probabilistic oracle for the same atoms, computed
// directly on the multiteam (exact counting, no formula machinery). Empty
// multiteams satisfy every kind.
bool direct_check(AtomKind kind, const std::vector<int>& xs, const std::vector<int>& ys,
                  const std::vector<int>& zs, const CausalMultiteam& m);

} // namespace cml
