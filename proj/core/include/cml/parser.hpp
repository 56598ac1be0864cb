#pragma once

#include <string>

#include "cml/formula.hpp"
#include "cml/signature.hpp"

namespace cml {

// Parses the ASCII surface syntax against a signature. The result is bound
// (variables and values resolved to indices) and well-formed; errors carry a
// character position. Use is_co() on the result to tell the flat layer from
// the probabilistic one.
FPtr parse(const std::string& text, const Signature& sig);

} // namespace cml
