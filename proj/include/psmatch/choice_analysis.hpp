#pragma once

#include <optional>
#include <vector>

#include "psmatch/market.hpp"

namespace psmatch {

// Per-agent structural predicates on a single preference relation. All
// checks are exact exhaustive decisions over subsets of X_a, guarded by
// Guards::max_agent_contracts.

struct SubstitutabilityWitness {
    Cset menu;    // X'
    int removed;  // x
    int dropped;  // x': in choice(menu), not in choice(menu minus removed)

    bool operator==(const SubstitutabilityWitness&) const = default;
};

enum class ComplementarityKind { OneWay, BiComplementary };

struct ComplementarityRecord {
    Cset base;  // acceptable set the pair lives in
    ComplementarityKind kind;
    int dependent;  // dropped when support is removed
    int support;    // survives removal of dependent (OneWay) or is dropped too (Bi)

    bool operator==(const ComplementarityRecord&) const = default;
};

enum class BlairVerdict { FirstPreferred, SecondPreferred, Incomparable, Equal };

struct PathIndependenceWitness {
    Cset first;
    Cset second;

    bool operator==(const PathIndependenceWitness&) const = default;
};

// A(P): all feasible S with choice(S) = S, in canonical set order.
std::vector<Cset> acceptable_sets(const Market& m, const PreferenceRelation& p);

// nullopt iff substitutable. The witness is deterministic: smallest menu in
// set order, then smallest removed id, then smallest dropped id.
std::optional<SubstitutabilityWitness> substitutability_witness(
    const Market& m, const PreferenceRelation& p, const Guards& g = {});
bool is_substitutable(const Market& m, const PreferenceRelation& p, const Guards& g = {});

// Checks that the inclusion form (choice(X'') intersect X' subset of
// choice(X') for X' subset of X'') agrees with the removal form above.
bool verify_remark1(const Market& m, const PreferenceRelation& p, const Guards& g = {});

std::optional<PathIndependenceWitness> path_independence_witness(
    const Market& m, const PreferenceRelation& p, const Guards& g = {});
bool is_path_independent(const Market& m, const PreferenceRelation& p, const Guards& g = {});

// Sanity oracle: choice(Z) = choice(X') whenever choice(X') subset Z subset X'.
// Holds for every preference-induced choice function.
bool verify_consistency(const Market& m, const PreferenceRelation& p, const Guards& g = {});

// Blair partial order over feasible sets. Throws std::invalid_argument on
// infeasible input.
BlairVerdict blair_compare(const Market& m, const PreferenceRelation& p, Cset x1, Cset x2);

// One record per complementary pair inside an acceptable base set, in
// deterministic order (base set order, then dependent/support ids).
std::vector<ComplementarityRecord> complementarity_report(const Market& m,
                                                          const PreferenceRelation& p,
                                                          const Guards& g = {});

}  // namespace psmatch
