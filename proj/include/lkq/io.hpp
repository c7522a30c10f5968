#pragma once

#include <string>

#include "json.hpp"

#include "lkq/polytope.hpp"

namespace lkq {

// {"dim": m, "facets": [{"a0", "a", "group", "index"}], "groups": [{"id", "size"}]}
// Numbers may be JSON numbers (read through their shortest decimal form) or "p/q" strings,
// so every polytope read from a document is exact.
LabelledPolytope polytope_from_json(const nlohmann::json& doc);
LabelledPolytope read_polytope(const std::string& path);
nlohmann::json polytope_to_json(const LabelledPolytope& P);

Rational json_rational(const nlohmann::json& v);

}  // namespace lkq
