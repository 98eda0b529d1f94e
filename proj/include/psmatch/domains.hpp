#pragma once

#include <optional>
#include <vector>

#include "psmatch/market.hpp"

namespace psmatch {

// Classification of a preference relation into the comparison domains:
// substitutable, pseudo-substitutable, bilaterally substitutable,
// substitutably completable.

struct BilateralWitness {
    int newcomer;  // x: the contract whose arrival re-activates another
    int revived;   // z: rejected from Y+{z}, chosen from Y+{x,z}
    Cset menu;     // Y, with both doctors absent from Y's doctors

    bool operator==(const BilateralWitness&) const = default;
};

std::optional<BilateralWitness> bilateral_witness(const Market& m,
                                                  const PreferenceRelation& p,
                                                  const Guards& g = {});
bool is_bilaterally_substitutable(const Market& m, const PreferenceRelation& p,
                                  const Guards& g = {});

// Searches for an extended strict ranking over all subsets of X_a (unitarity
// dropped) that preserves the input chain's relative order and acceptability
// on feasible sets and whose induced choice is substitutable over arbitrary
// menus. With permissive=true, feasible sets the input ranks below the null
// set may be re-inserted above it (a weaker reading kept for comparison).
std::optional<std::vector<Cset>> substitutable_completion(const Market& m,
                                                          const PreferenceRelation& p,
                                                          const Guards& g = {},
                                                          bool permissive = false);
bool has_substitutable_completion(const Market& m, const PreferenceRelation& p,
                                  const Guards& g = {});

struct DomainClassification {
    bool substitutable = false;
    bool pseudo_substitutable = false;
    bool bilaterally_substitutable = false;
    bool substitutably_completable = false;
    std::optional<std::vector<Cset>> completion_witness;
};

DomainClassification classify(const Market& m, const PreferenceRelation& p,
                              const Guards& g = {});

}  // namespace psmatch
