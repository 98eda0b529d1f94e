#include "psmatch/gen.hpp"

#include <algorithm>

#include "psmatch/subpref.hpp"

namespace psmatch {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

// random strict-superset-first linear extension of family
std::vector<Cset> random_extension(std::vector<Cset> family, SplitMix64& rng) {
    std::vector<Cset> order;
    order.reserve(family.size());
    while (!family.empty()) {
        std::vector<size_t> maximal;
        for (size_t i = 0; i < family.size(); ++i) {
            bool top = true;
            for (size_t j = 0; j < family.size() && top; ++j)
                if (j != i && (family[i] & ~family[j]) == 0) top = false;
            if (top) maximal.push_back(i);
        }
        size_t pick = maximal[rng.below(maximal.size())];
        order.push_back(family[pick]);
        family.erase(family.begin() + static_cast<long>(pick));
    }
    return order;
}

}  // namespace

Market random_market(const GenParams& params) {
    if (params.doctors < 1 || params.hospitals < 1 || params.contracts < 0 ||
        params.contracts > 31)
        throw std::invalid_argument("generation counts out of range");
    SplitMix64 rng(params.seed);
    std::vector<std::string> doctors, hospitals;
    for (int i = 1; i <= params.doctors; ++i) doctors.push_back("d" + std::to_string(i));
    for (int i = 1; i <= params.hospitals; ++i) hospitals.push_back("h" + std::to_string(i));
    std::vector<Contract> contracts;
    for (int i = 1; i <= params.contracts; ++i)
        contracts.push_back({"x" + std::to_string(i),
                             doctors[rng.below(doctors.size())],
                             hospitals[rng.below(hospitals.size())]});
    return Market(doctors, hospitals, contracts);
}

PreferenceRelation random_preference(std::uint64_t seed, const std::string& agent,
                                     const Market& m, const GenParams& params) {
    SplitMix64 rng(seed ^ fnv1a(agent));
    std::vector<Cset> pool;
    for (Cset s : m.feasible_sets(agent))
        if (s != 0) pool.push_back(s);
    shuffle(pool, rng);
    auto bias = static_cast<std::uint64_t>(params.acceptance_bias * 1000.0);
    std::vector<Cset> family;
    for (Cset s : pool) {
        if (static_cast<int>(family.size()) >= params.chain_length_max) break;
        if (rng.chance(bias, 1000)) family.push_back(s);
    }
    PreferenceRelation p{agent, random_extension(std::move(family), rng)};
    p.chain.push_back(0);
    return p;
}

PreferenceProfile random_profile(const Market& m, const GenParams& params) {
    PreferenceProfile profile;
    for (const auto& a : m.agents())
        profile.by_agent[a] = random_preference(params.seed, a, m, params);
    return profile;
}

Instance random_instance(const GenParams& params) {
    Instance inst;
    inst.market = random_market(params);
    inst.profile = random_profile(inst.market, params);
    return inst;
}

std::pair<PreferenceRelation, PreferenceRelation> random_subpreference_pair(
    std::uint64_t seed, const std::string& agent, const Market& m,
    const GenParams& params) {
    PreferenceRelation sup = random_preference(seed, agent, m, params);
    SplitMix64 rng(seed ^ fnv1a(agent) ^ 0xA5A5A5A5A5A5A5A5ull);
    PreferenceRelation sub = sup;
    std::vector<size_t> slots(sub.chain.size() - 1);
    for (size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    shuffle(slots, rng);
    for (size_t slot : slots) {
        if (!rng.chance(1, 2)) continue;
        // drop by value: positions shift as earlier drops land
        Cset target = sup.chain[slot];
        auto it = std::find(sub.chain.begin(), sub.chain.end() - 1, target);
        if (it == sub.chain.end() - 1) continue;
        PreferenceRelation cand = sub;
        cand.chain.erase(cand.chain.begin() + (it - sub.chain.begin()));
        if (is_subpreference(m, cand, sup)) sub = std::move(cand);
    }
    return {sub, sup};
}

}  // namespace psmatch
