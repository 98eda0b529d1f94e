#pragma once

#include <string>

#include <json.hpp>

#include "psmatch/market.hpp"

namespace psmatch {

// Market document format (UTF-8 JSON):
//   {
//     "doctors":   ["d1", ...],
//     "hospitals": ["h", ...],
//     "contracts": [{"id":"x","doctor":"d1","hospital":"h"}, ...],
//     "preferences": { "agent": [["x","y"],["x"],[]], ... }
//   }
// The last array of every chain must be empty, denoting the null set.
// Serialization is canonical: keys in the order above, arrays in input
// order, set members sorted lexicographically.

ValidationOutcome validate_market(const nlohmann::json& doc);
ValidationOutcome load_instance_file(const std::string& path);

nlohmann::ordered_json chain_to_json(const Market& m, const PreferenceRelation& p);
nlohmann::ordered_json instance_to_json(const Instance& inst);
void write_instance_file(const Instance& inst, const std::string& path);

}  // namespace psmatch
