#pragma once

#include <string>

#include "json.hpp"

#include "diffcoh/simplicial.hpp"

namespace diffcoh {

using Json = nlohmann::ordered_json;

/// {"cells":{"0":[...],...},"faces":{"e":[["","v"],["","v"]],...},"basepoint":"v"}
Json to_presentation(const SimplicialSet& X);
SSetPtr from_presentation(const Json& j, const std::string& name = "");
/// Canonical compact text; parse followed by dump reproduces canonical input byte for byte.
std::string dump_presentation(const SimplicialSet& X);
SSetPtr parse_presentation(const std::string& text, const std::string& name = "");

/// {"ambient": <presentation>, "subcomplex": [cell names]}
Json to_pair_presentation(const Pair& P);
PairPtr from_pair_presentation(const Json& j, const std::string& name = "");

}  // namespace diffcoh
