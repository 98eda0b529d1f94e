#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psmatch/market.hpp"

namespace psmatch {

// Allocation enumeration and the stability predicates. Stability is decided
// by enumeration, never by running a mechanism.

struct StabilityReport {
    Cset allocation = 0;
    bool individually_rational = false;
    std::vector<int> blockers;  // contract indices, lexicographic by id
    bool pairwise_stable = false;
    bool corewise_stable = false;
};

// All Y subset of X feasible for every agent, in canonical set order.
std::vector<Cset> enumerate_allocations(const Market& m, const Guards& g = {});

bool is_allocation(const Market& m, Cset y);

// Second member: the first violating agent (doctors then hospitals).
std::pair<bool, std::optional<std::string>> is_individually_rational(
    const Market& m, const PreferenceProfile& profile, Cset y);

// All x outside Y chosen by both signatories when added to Y.
std::vector<int> blocking_contracts(const Market& m, const PreferenceProfile& profile,
                                    Cset y);

bool is_pairwise_stable(const Market& m, const PreferenceProfile& profile, Cset y);

// S(P)
std::vector<Cset> stable_set(const Market& m, const PreferenceProfile& profile,
                             const Guards& g = {});

// Second member: a deviating contract set when the allocation is unstable.
std::pair<bool, std::optional<Cset>> is_corewise_stable(const Market& m,
                                                        const PreferenceProfile& profile,
                                                        Cset y, const Guards& g = {});

// Checks S(subprofile) subset of S(profile); requires the sub-preference
// relation to hold agentwise.
bool verify_inclusion(const Market& m, const PreferenceProfile& subprofile,
                      const PreferenceProfile& profile, const Guards& g = {});

StabilityReport stability_report(const Market& m, const PreferenceProfile& profile,
                                 Cset y, bool with_corewise, const Guards& g = {});

}  // namespace psmatch
