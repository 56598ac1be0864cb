#pragma once

#include <string>

#include "cml/formula.hpp"

namespace cml {

// The sublanguage hierarchy. PSup and PBox are incomparable; every other pair
// is ordered PMinus < P < {PSup, PBox} < PCO < Extended.
enum class FragmentLabel { PMinus, P, PSup, PBox, PCO, Extended };

const char* fragment_str(FragmentLabel f);

// Partial order of the hierarchy.
bool fragment_le(FragmentLabel a, FragmentLabel b);

// Least label whose fragment contains f. Occurrences of supset and boxright
// count anywhere in the tree, including Pr arguments and antecedents;
// conditional atoms count as supset when expandable and as Extended otherwise.
FragmentLabel classify_fragment(const FPtr& f);

} // namespace cml
