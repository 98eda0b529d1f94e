#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psmatch/market.hpp"

namespace psmatch {

// Constructive refutation of stability for a non-pseudo-substitutable agent:
// find a one-way complementary pair inside a minimal sub-preference, then
// splice in a rival agent whose linear chain makes every allocation blocked.

enum class OverlapCase {
    SinglePair,
    DisjointPairs,
    OverlappingChain,         // x1 -> x2 and x2 -> x3
    OverlappingSharedTarget,  // x1 -> x2 and x3 -> x2
    OverlappingSharedSource,  // x1 -> x2 and x1 -> x3
    Cyclic,                   // x1 -> x2 -> x3 -> x1; refuted, never buildable
};

std::string to_string(OverlapCase c);

struct UnidirectionalWitness {
    PreferenceRelation minimal_sub;
    Cset base = 0;  // minimal acceptable set carrying the pair(s)
    // (support, dependent): support survives removal of dependent from base,
    // dependent does not survive removal of support
    std::vector<std::pair<int, int>> pairs;
    OverlapCase overlap = OverlapCase::SinglePair;
    std::vector<int> gadget;  // contracts in role order x1..xk
};

struct ConstructedMarket {
    Instance instance;
    OverlapCase overlap = OverlapCase::SinglePair;
    std::string pivot;                        // the agent whose relation was refuted
    std::string rival;                        // the added counterpart agent
    std::vector<std::string> added_contracts; // y1..yk, role order
    Cset base_remainder = 0;                  // the base minus gadget, new market's indexing
};

// nullopt iff pref is pseudo-substitutable. Deterministic: first minimal
// sub-preference, first inclusion-minimal base in set order, pairs sorted by
// (support, dependent) ids.
std::optional<UnidirectionalWitness> find_unidirectional_witness(const Market& m,
                                                                 const PreferenceRelation& pref,
                                                                 const Guards& g = {});

// Splices the rival agent and its contracts into the market. Throws
// std::logic_error for a cyclic witness (such a pattern contradicts
// minimality) and std::invalid_argument for a malformed witness.
ConstructedMarket build_counterexample(const Market& m, const PreferenceRelation& pref,
                                       const UnidirectionalWitness& w, const Guards& g = {});

// stable_set empty AND every agent other than the pivot pseudo-substitutable.
bool verify_empty_stable(const ConstructedMarket& cm, const Guards& g = {});

// For every proper subset S of base_remainder and z outside S in the
// remainder: z is chosen from S + {z}.
bool verify_claim1(const Market& m, const PreferenceRelation& minimal_sub,
                   Cset base_remainder);

struct BlockingRow {
    Cset pivot_side;   // allocation's contracts at the refuted agent
    Cset rival_side;   // allocation's contracts at the added agent
    int blocker;       // expected member of blocking_contracts
};

// The fixed single-pair table (six rows over base_remainder, x1, x2, y1, y2).
std::vector<BlockingRow> single_pair_table(const ConstructedMarket& cm);

// Checks every row's blocker, then the generic tail: any individually
// rational allocation whose pivot side misses part of base_remainder is
// blocked by one of the missing contracts.
bool verify_blocking_table(const ConstructedMarket& cm, const Guards& g = {});

// Enumerated blocking analysis of a constructed market: one row per
// individually rational allocation, blocker = first blocking contract.
struct AnalysisRow {
    Cset allocation;
    std::vector<int> blockers;
};
std::vector<AnalysisRow> blocking_analysis(const ConstructedMarket& cm, const Guards& g = {});

}  // namespace psmatch
