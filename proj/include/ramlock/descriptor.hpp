#pragma once

#include <string>

#include <json.hpp>

#include "ramlock/local_field.hpp"

namespace ramlock {

using Json = nlohmann::ordered_json;

/// Field descriptor {"p", "f", "eisenstein", "prec"}; coefficients are
/// integers or integer lists (polynomials in the unramified generator).
Json field_to_json(const LocalField& k);
LocalField field_from_json(const Json& j);

/// Default precision when a descriptor omits it: 40, clamped to the residue budget.
int default_prec(u64 p, int e);

/// Element encoding: an integer, a list of pi-adic coefficients (each an
/// integer or an integer list), or {"pi_power": v, "coeffs": [...]}.
Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const LocalField& k, const Json& j);

/// Parse JSON, or the TOML subset of `key = value` lines with `[table]` headers
/// whose values are JSON literals (integers, strings, arrays, booleans).
Json parse_document(const std::string& text);
std::string to_toml(const Json& j);

std::string read_file(const std::string& path);

}  // namespace ramlock
