#pragma once

#include "json.hpp"
#include "residua/constructor.hpp"
#include "residua/fractional.hpp"
#include "residua/recurrence.hpp"

namespace residua {

// Flat record with a schema version; m, x0, x1 and the residues are decimal
// strings since they may exceed native word size.  The construction path is
// a tagged object (recursive for reversed certificates).
nlohmann::json to_json(const Certificate& cert);

// Inverse of to_json; throws InputError on unknown schema, missing fields,
// or malformed numbers.
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrbitStats& stats);

// Rationals are serialized as "num/den" strings (mpq canonical form).
nlohmann::json to_json(const LimitReport& rep);

}  // namespace residua
