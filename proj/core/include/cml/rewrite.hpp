#pragma once

#include <vector>

#include "cml/enumerate.hpp"
#include "cml/formula.hpp"
#include "cml/model.hpp"

namespace cml {

// Every supset not inside a Pr argument or an antecedent ends with a
// probabilistic atom as consequent. Requires core syntax in the supset
// fragment; idempotent.
FPtr supset_normal_form(const FPtr& f, const Signature& sig);

// Pushes boxright into probability statements (boxright fragment, core
// syntax): distribution over conjunction and global disjunction, flattening
// of nested counterfactual prefixes, and the four atom equivalences.
// Inconsistent antecedents reduce to a tautology. Idempotent.
FPtr push_boxright(const FPtr& f, const Signature& sig);

// phi^F: replaces counterfactual-bearing antecedents and Pr arguments by
// disjunctions of state formulas computed under the fixed laws. The result
// has no boxright and is equivalent to the input on every model whose laws
// equal F.
FPtr relativize(const FPtr& f, const FunctionComponent& laws, const Signature& sig);

enum class CharKind { Phi, Psi, Theta };

// Phi^F / Psi^F characterize "has function component F" on nonempty models;
// Theta_T characterizes "is a rescaling of T's multiteam" (laws ignored).
FPtr characteristic_formula(CharKind kind, const FunctionComponent& laws, const Signature& sig);
FPtr theta_formula(const Multiteam& team, const Signature& sig);

// (F, relativize(phi, F)) for every F of the signature; the global
// disjunction of Psi^F and the relativized formula reconstructs phi.
std::vector<std::pair<FunctionComponent, FPtr>> pco_decompose(const FPtr& phi,
                                                              const Signature& sig,
                                                              const EnumGuard& guard = {});

} // namespace cml
