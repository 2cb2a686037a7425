#pragma once

#include "latkit/catalog.hpp"
#include "latkit/isometry.hpp"
#include "latkit/pair_sum.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace latkit {

using nlohmann::json;

// Lattice object: {"name": optional, "gram": [[...]], "basis": optional}.
// Rational entries are integers or "p/q" strings. With a basis the standard
// inner product is implied; a gram given alongside is cross-checked.
Lattice lattice_from_json(const json& j);
json lattice_to_json(const Lattice& l, const std::string& name = "");

// Accepts a catalog name ("A3", "sqrt2D5+W4", ...), a path to a JSON file,
// or inline JSON starting with '{'.
Lattice load_lattice_arg(const std::string& arg);

// {"kind":"perm","cycles":[[1,2]]}, {"kind":"signed","images":[[-2],[1]]},
// {"kind":"root_reflection","root":[...]}, {"kind":"matrix","rows":[[...]]},
// {"kind":"negated","inner":{...}}, {"kind":"identity"},
// {"kind":"negation_of_all"}.
IsometrySpec isometry_spec_from_json(const json& j);
json isometry_spec_to_json(const IsometrySpec& s);
IsometrySpec load_isometry_arg(const std::string& arg);

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json pair_sum_to_json(const PairSumResult& r);
json identification_to_json(const Identification& id);

Rat rat_from_json(const json& j);
json rat_to_json(const Rat& q);

}  // namespace latkit
