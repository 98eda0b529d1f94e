#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "psmatch/choice_analysis.hpp"
#include "psmatch/market.hpp"

namespace psmatch {

// The sub-preference relation, minimality, and pseudo-substitutability.
// The exhaustive enumeration over canonical sub-preferences is the
// definition of truth here; the reduction fast path is advisory.

enum class SubprefBreach { AcceptabilityBreach, BlockingBreach };

struct SubprefWitness {
    SubprefBreach kind;
    Cset menu;
    std::optional<int> contract;  // the marginal contract, for BlockingBreach

    bool operator==(const SubprefWitness&) const = default;
};

// nullopt iff sub is a sub-preference of sup. Throws std::invalid_argument
// on agent mismatch.
std::optional<SubprefWitness> subpreference_witness(const Market& m,
                                                    const PreferenceRelation& sub,
                                                    const PreferenceRelation& sup);
bool is_subpreference(const Market& m, const PreferenceRelation& sub,
                      const PreferenceRelation& sup);

// Drops chain entries ranked below one of their own proper subsets; the
// choice function is unchanged and the result's chain is exactly the
// acceptable family (minus the null set) in original order.
PreferenceRelation canonicalize(const Market& m, const PreferenceRelation& p);

// Visits every canonical sub-preference of sup, deterministically: families
// by increasing size then set order, chain orders as lexicographic linear
// extensions of strict-superset-first. Return false from the visitor to stop.
void for_each_canonical_subpreference(
    const Market& m, const PreferenceRelation& sup, const Guards& g,
    const std::function<bool(const PreferenceRelation&)>& visit);

std::vector<PreferenceRelation> enumerate_canonical_subpreferences(
    const Market& m, const PreferenceRelation& sup, const Guards& g = {});

// Requires is_subpreference(sub, sup); true iff no sub-preference of sup has
// a strictly smaller acceptable family.
bool is_minimal(const Market& m, const PreferenceRelation& sub,
                const PreferenceRelation& sup, const Guards& g = {});

// All sub-preferences of sup whose acceptable family is minimal under
// strict inclusion among sub-preference families.
std::vector<PreferenceRelation> minimal_subpreferences(const Market& m,
                                                       const PreferenceRelation& sup,
                                                       const Guards& g = {});

// Exhaustive oracle: first enumerated substitutable sub-preference.
std::optional<PreferenceRelation> find_substitutable_subpreference(
    const Market& m, const PreferenceRelation& sup, const Guards& g = {});

// Reduction fast path: starting from the canonical form, repeatedly drops
// the smallest acceptable set carrying a bi-complementary pair, keeping only
// drops that preserve the sub-preference conditions. Stops at a fixed point.
PreferenceRelation reduce_minimal(const Market& m, const PreferenceRelation& sup,
                                  const Guards& g = {});

// Fast-path certificate search: reduces to the fixed point, then scans the
// linear extensions of the fixed point's family. Dropping alone cannot
// reorder incomparable entries, so the extension scan is needed to reach
// certificates that share the family but not the chain order.
std::optional<PreferenceRelation> fast_pseudo_certificate(const Market& m,
                                                          const PreferenceRelation& sup,
                                                          const Guards& g = {});

struct PseudoVerdict {
    bool holds = false;
    std::optional<PreferenceRelation> certificate;
    // one minimal sub-preference per entry, with a one-way complementary
    // pair inside it when one exists
    std::vector<std::pair<PreferenceRelation, std::optional<ComplementarityRecord>>> refutation;
};

PseudoVerdict is_pseudo_substitutable(const Market& m, const PreferenceRelation& pref,
                                      const Guards& g = {});

// Checks transitivity of the sub-preference relation on a concrete chain
// p3 below p2 below p1; the premises are verified and the conclusion tested.
bool verify_transitivity(const Market& m, const PreferenceRelation& p3,
                         const PreferenceRelation& p2, const PreferenceRelation& p1);

// Collects every substitutable sub-preference of sup and asserts that they
// share one acceptable family, agree on the Blair order over it, and are
// all minimal.
bool verify_shared_structure(const Market& m, const PreferenceRelation& sup,
                             const Guards& g = {});

}  // namespace psmatch
