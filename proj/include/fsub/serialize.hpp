#pragma once

// JSON document form of a derivation. Keys appear in the fixed order
//
//   {"rule": "trs", "env": "X <: Top, Y <: X", "lhs": "Y", "rhs": "X",
//    "witness": null, "premises": [ ... ]}
//
// Types and environments are written in the surface syntax of parser.hpp.
// `witness` is a name on `all`/`All` nodes and null elsewhere.

#include <string>
#include <string_view>

#include <json.hpp>

#include "fsub/derivation.hpp"

namespace fsubtype {

using Json = nlohmann::ordered_json;

Json to_json(const Derivation& d);
/// Throws ParseError for malformed type/env text and std::invalid_argument
/// for structural problems (unknown rule, missing key, wrong arity).
Derivation derivation_from_json(const Json& j);

/// Compact single-line document.
std::string serialize(const Derivation& d);
Derivation parse_derivation(std::string_view text);

}  // namespace fsubtype
