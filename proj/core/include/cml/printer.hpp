#pragma once

#include <string>

#include "cml/formula.hpp"
#include "cml/signature.hpp"

namespace cml {

// Canonical text form; parse(print(f)) reproduces f node for node.
std::string print(const FPtr& f, const Signature& sig);

} // namespace cml
