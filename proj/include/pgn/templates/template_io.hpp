#pragma once

#include "pgn/templates/template.hpp"

#include <json.hpp>

namespace pgn {

// {"m","n","breakpoints","startValues","slopes":[[[p,q],...] per segment]}.
// Reals are JSON numbers when exactly a double, "p/q" strings otherwise.
nlohmann::json template_to_json(const Template& L);
Template template_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& r);
// number, "p/q" string or [p, q] pair
Rational rational_from_json(const nlohmann::json& j);

}  // namespace pgn
