#pragma once

#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cptp/cone_oracle.hpp"
#include "cptp/pop.hpp"

namespace cptp {

// Problem JSON:
//   { "nvars": n,
//     "objective": [ {"coef": "p/q", "exp": [e1, ..., en]} | "p/q : e1 ... en", ... ],
//     "constraints": {"B": [[...], ...], "b": [...]} | {"points": [[...], ...]},
//     "kind": "homogeneous" | "inhomogeneous" }
// Rationals are JSON integers or "p/q" strings; fractional JSON numbers are rejected.
// "constraints" defaults to the nonnegative orthant and "kind" to inhomogeneous.

/// Throws ParseError with line and column for syntax errors and with the JSON path otherwise.
PopInstance parse_problem_json(std::string_view text);
std::string write_problem_json(const PopInstance& p);

nlohmann::json rational_json(const Rational& value);
nlohmann::json rational_vector_json(std::span<const Rational> values);
nlohmann::json verdict_json(const CopositivityVerdict& v);

/// Two-space indented dump with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace cptp
