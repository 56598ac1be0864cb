#pragma once

#include <string>

#include "cml/geometry.hpp"
#include "cml/model.hpp"

namespace cml {

// Model file:
//   {"signature": {"order": [...], "ranges": {var: [values...]}},
//    "rows": [{"values": {var: val}, "count": int}],
//    "functions": {var: {"args": [vars...], "table": [{"in": {arg: val}, "out": val}]}}}
// Values are integers or strings. Declared argument lists must contain all
// actual parents; tables are extended internally to the maximal
// representative. The loader validates and rejects invalid files with the
// violation list.
CausalMultiteam load_model_string(const std::string& text);
CausalMultiteam load_model_file(const std::string& path);
std::string model_to_json_string(const CausalMultiteam& m, bool pretty = true);

// Accepts either a bare {"order": ..., "ranges": ...} object or a full model
// file (the signature part is used).
Signature load_signature_string(const std::string& text);
Signature load_signature_file(const std::string& path);

// Inequality-system file:
//   {"n": int, "systems": [{"ineqs": [{"coeffs": ["1","-1","0"],
//    "cmp": "<=", "b": "1/3"}]}]}
// Rationals are strings "p/q" (plain integers also accepted).
ProbabilitySet load_system_string(const std::string& text);
ProbabilitySet load_system_file(const std::string& path);
std::string system_to_json_string(const ProbabilitySet& s, bool pretty = true);

} // namespace cml
