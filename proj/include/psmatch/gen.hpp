#pragma once

#include <cstdint>
#include <utility>

#include "psmatch/market.hpp"

namespace psmatch {

// Seeded deterministic generation. All randomness flows through SplitMix64,
// so corpora are reproducible across platforms; the constants are part of
// the external contract (see README).

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n), n > 0; unbiased enough for test corpora
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    // true with probability num/den
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

struct GenParams {
    std::uint64_t seed = 1;
    int doctors = 3;
    int hospitals = 2;
    int contracts = 5;
    int chain_length_max = 6;
    double acceptance_bias = 0.6;  // probability a feasible set enters the family
};

Market random_market(const GenParams& params);

// Canonical chain over a random acceptable family: supersets first, then a
// seeded linear extension; always ends with the null set.
PreferenceRelation random_preference(std::uint64_t seed, const std::string& agent,
                                     const Market& m, const GenParams& params);

PreferenceProfile random_profile(const Market& m, const GenParams& params);

Instance random_instance(const GenParams& params);

// sup random, sub derived from sup by verified acceptable-family shrinking;
// the returned pair always satisfies is_subpreference(sub, sup).
std::pair<PreferenceRelation, PreferenceRelation> random_subpreference_pair(
    std::uint64_t seed, const std::string& agent, const Market& m,
    const GenParams& params);

}  // namespace psmatch
