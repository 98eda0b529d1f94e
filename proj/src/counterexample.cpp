#include "psmatch/counterexample.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "psmatch/choice_analysis.hpp"
#include "psmatch/stability.hpp"
#include "psmatch/subpref.hpp"

namespace psmatch {

namespace {

Cset bit(int i) { return Cset{1} << i; }

// (support, dependent): support survives removal of dependent, not vice versa.
std::vector<std::pair<int, int>> oneway_pairs(const Market& m, const PreferenceRelation& p,
                                              Cset base) {
    std::vector<std::pair<int, int>> out;
    // pair members must be chosen at the base (equals the base itself when
    // the base is acceptable); the removal tests run against the full base
    auto ids = m.members_lex(choice(m, p, base));
    for (int a : ids)
        for (int b : ids) {
            if (a == b) continue;
            bool a_without_b = (choice(m, p, base & ~bit(b)) & bit(a)) != 0;
            bool b_without_a = (choice(m, p, base & ~bit(a)) & bit(b)) != 0;
            if (a_without_b && !b_without_a) out.emplace_back(a, b);
        }
    std::sort(out.begin(), out.end(), [&](auto& x, auto& y) {
        const auto& ca = m.contracts();
        return std::pair(ca[x.first].id, ca[x.second].id) <
               std::pair(ca[y.first].id, ca[y.second].id);
    });
    return out;
}

std::pair<OverlapCase, std::vector<int>> classify(
    const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.size() == 1)
        return {OverlapCase::SinglePair, {pairs[0].first, pairs[0].second}};
    for (const auto& [a, b] : pairs)
        for (const auto& [c, d] : pairs) {
            if (b != c) continue;
            for (const auto& [e, f] : pairs)
                if (d == e && f == a) return {OverlapCase::Cyclic, {a, b, d}};
        }
    auto [a1, b1] = pairs[0];
    auto [a2, b2] = pairs[1];
    if (a1 != a2 && a1 != b2 && b1 != a2 && b1 != b2)
        return {OverlapCase::DisjointPairs, {a1, b1, a2, b2}};
    if (b1 == a2) return {OverlapCase::OverlappingChain, {a1, b1, b2}};
    if (a1 == b2) return {OverlapCase::OverlappingChain, {a2, b2, b1}};
    if (b1 == b2) return {OverlapCase::OverlappingSharedTarget, {a1, b1, a2}};
    return {OverlapCase::OverlappingSharedSource, {a1, b1, b2}};
}

std::string fresh_token(const std::set<std::string>& taken, std::string base) {
    while (taken.count(base)) base += "'";
    return base;
}

// per-case rival chain (indices into gadget) and counterpart chain shapes
// (true = the new contract first, false = the original contract first)
void case_layout(OverlapCase c, std::vector<int>& rival_order,
                 std::vector<bool>& new_first) {
    switch (c) {
        case OverlapCase::SinglePair:
            rival_order = {1, 0};
            new_first = {true, false};
            break;
        case OverlapCase::DisjointPairs:
            rival_order = {1, 3, 2, 0};
            new_first = {true, false, true, false};
            break;
        case OverlapCase::OverlappingChain:
            rival_order = {2, 1, 0};
            new_first = {true, false, false};
            break;
        case OverlapCase::OverlappingSharedTarget:
            rival_order = {1, 2, 0};
            new_first = {true, false, true};
            break;
        case OverlapCase::OverlappingSharedSource:
            rival_order = {1, 2, 0};
            new_first = {true, false, false};
            break;
        case OverlapCase::Cyclic:
            throw std::logic_error("cyclic pattern has no layout");
    }
}

}  // namespace

std::string to_string(OverlapCase c) {
    switch (c) {
        case OverlapCase::SinglePair: return "single-pair";
        case OverlapCase::DisjointPairs: return "disjoint-pairs";
        case OverlapCase::OverlappingChain: return "overlapping-chain";
        case OverlapCase::OverlappingSharedTarget: return "overlapping-shared-target";
        case OverlapCase::OverlappingSharedSource: return "overlapping-shared-source";
        case OverlapCase::Cyclic: return "cyclic";
    }
    return "?";
}

std::optional<UnidirectionalWitness> find_unidirectional_witness(
    const Market& m, const PreferenceRelation& pref, const Guards& g) {
    if (is_pseudo_substitutable(m, pref, g).holds) return std::nullopt;
    auto pick = [&](const PreferenceRelation& mini,
                    const std::vector<Cset>& bases) -> std::optional<UnidirectionalWitness> {
        std::vector<Cset> carriers;
        for (Cset base : bases)
            if (!oneway_pairs(m, mini, base).empty()) carriers.push_back(base);
        if (carriers.empty()) return std::nullopt;
        std::vector<Cset> minimal;
        for (Cset b : carriers) {
            bool ok = true;
            for (Cset other : carriers)
                if (other != b && (other & ~b) == 0) {
                    ok = false;
                    break;
                }
            if (ok) minimal.push_back(b);
        }
        std::sort(minimal.begin(), minimal.end(),
                  [&](Cset a, Cset b) { return m.set_less(a, b); });
        Cset base = minimal.front();
        auto pairs = oneway_pairs(m, mini, base);
        auto [overlap, gadget] = classify(pairs);
        return UnidirectionalWitness{mini, base, pairs, overlap, gadget};
    };
    auto minis = minimal_subpreferences(m, pref, g);
    for (const auto& mini : minis)
        if (auto w = pick(mini, acceptable_sets(m, mini))) return w;
    // Some failures live only on menus the relation never accepts (a pair of
    // contracts sharing a counterpart, say); widen the base search to every
    // menu so the witness still surfaces the one-way dependency.
    for (const auto& mini : minis) {
        std::vector<Cset> menus;
        for (Cset s : m.submasks_sorted(m.agent_contracts(pref.agent))) menus.push_back(s);
        if (auto w = pick(mini, menus)) return w;
    }
    return std::nullopt;
}

ConstructedMarket build_counterexample(const Market& m, const PreferenceRelation& pref,
                                       const UnidirectionalWitness& w, const Guards&) {
    if (w.overlap == OverlapCase::Cyclic)
        throw std::logic_error(
            "cyclic complementarity cannot occur in a minimal sub-preference");
    if (!is_subpreference(m, w.minimal_sub, pref))
        throw std::invalid_argument("malformed witness: sub-preference");
    for (const auto& [support, dependent] : w.pairs)
        if ((choice(m, w.minimal_sub, w.base & ~bit(dependent)) & bit(support)) == 0 ||
            (choice(m, w.minimal_sub, w.base & ~bit(support)) & bit(dependent)) != 0)
            throw std::invalid_argument("malformed witness: pair orientation");
    std::vector<int> rival_order;
    std::vector<bool> new_first;
    case_layout(w.overlap, rival_order, new_first);
    if (w.gadget.size() != new_first.size())
        throw std::invalid_argument("malformed witness: gadget size");
    for (int x : w.gadget)
        if ((w.base & bit(x)) == 0 ||
            (choice(m, w.minimal_sub, w.base) & bit(x)) == 0)
            throw std::invalid_argument("malformed witness: gadget outside chosen base");

    const std::string& pivot = pref.agent;
    bool pivot_is_hospital = m.is_hospital(pivot);

    std::set<std::string> agent_tokens(m.doctors().begin(), m.doctors().end());
    agent_tokens.insert(m.hospitals().begin(), m.hospitals().end());
    std::string rival = fresh_token(agent_tokens, pivot + "'");

    std::set<std::string> contract_tokens;
    for (const auto& c : m.contracts()) contract_tokens.insert(c.id);

    std::vector<std::string> doctors = m.doctors();
    std::vector<std::string> hospitals = m.hospitals();
    (pivot_is_hospital ? hospitals : doctors).push_back(rival);

    std::vector<Contract> contracts = m.contracts();
    std::vector<std::string> added;
    for (size_t i = 0; i < w.gadget.size(); ++i) {
        std::string id = fresh_token(contract_tokens, "y" + std::to_string(i + 1));
        contract_tokens.insert(id);
        const std::string& mate = m.counterpart(w.gadget[i], pivot);
        contracts.push_back(pivot_is_hospital ? Contract{id, mate, rival}
                                              : Contract{id, rival, mate});
        added.push_back(id);
    }

    ConstructedMarket cm;
    cm.instance.market = Market(doctors, hospitals, contracts);
    cm.overlap = w.overlap;
    cm.pivot = pivot;
    cm.rival = rival;
    cm.added_contracts = added;
    const Market& nm = cm.instance.market;

    auto reindex = [&](Cset old_set) { return nm.set_from_ids(m.set_ids(old_set)); };
    auto single = [&](const std::string& id) {
        return Cset{1} << nm.contract_index(id);
    };

    Cset gadget_mask = 0;
    for (int x : w.gadget) gadget_mask |= bit(x);
    cm.base_remainder = reindex(w.base & ~gadget_mask);

    auto& profile = cm.instance.profile.by_agent;
    PreferenceRelation pivot_rel{pivot, {}};
    for (Cset e : w.minimal_sub.chain) pivot_rel.chain.push_back(reindex(e));
    profile[pivot] = pivot_rel;

    PreferenceRelation rival_rel{rival, {}};
    for (int i : rival_order) rival_rel.chain.push_back(single(added[i]));
    rival_rel.chain.push_back(0);
    profile[rival] = rival_rel;

    for (size_t i = 0; i < w.gadget.size(); ++i) {
        const std::string& mate = m.counterpart(w.gadget[i], pivot);
        Cset orig = single(m.contracts()[w.gadget[i]].id);
        Cset fresh = single(added[i]);
        PreferenceRelation rel{mate, {}};
        rel.chain = new_first[i] ? std::vector<Cset>{fresh, orig, 0}
                                 : std::vector<Cset>{orig, fresh, 0};
        profile[mate] = rel;
    }
    for (int z : nm.members_lex(cm.base_remainder)) {
        const std::string& mate = nm.counterpart(z, pivot);
        // a counterpart can double as a gadget-role agent when the base is
        // infeasible for the pivot; the gadget chain takes precedence then
        if (profile.count(mate)) continue;
        profile[mate] = PreferenceRelation{mate, {bit(z), 0}};
    }
    for (const auto& a : nm.agents())
        if (!profile.count(a)) profile[a] = PreferenceRelation{a, {0}};
    return cm;
}

bool verify_empty_stable(const ConstructedMarket& cm, const Guards& g) {
    const Market& m = cm.instance.market;
    if (!stable_set(m, cm.instance.profile, g).empty()) return false;
    for (const auto& a : m.agents()) {
        if (a == cm.pivot) continue;
        if (!is_pseudo_substitutable(m, cm.instance.profile.at(a), g).holds) return false;
    }
    return true;
}

bool verify_claim1(const Market& m, const PreferenceRelation& minimal_sub,
                   Cset base_remainder) {
    for (Cset sub : m.submasks_sorted(base_remainder)) {
        if (sub == base_remainder) continue;
        for (int z : m.members_lex(base_remainder & ~sub))
            if ((choice(m, minimal_sub, sub | bit(z)) & bit(z)) == 0) return false;
    }
    return true;
}

std::vector<BlockingRow> single_pair_table(const ConstructedMarket& cm) {
    if (cm.overlap != OverlapCase::SinglePair)
        throw std::invalid_argument("single-pair table requires a single-pair case");
    const Market& m = cm.instance.market;
    Cset rem = cm.base_remainder;
    const auto& pivot_chain = cm.instance.profile.at(cm.pivot).chain;
    // recover x1, x2 from the counterpart chains of y1, y2
    int y1 = m.contract_index(cm.added_contracts[0]);
    int y2 = m.contract_index(cm.added_contracts[1]);
    auto original_of = [&](int y) {
        const auto& rel = cm.instance.profile.at(m.counterpart(y, cm.rival));
        for (Cset e : rel.chain)
            if (e != 0 && e != bit(y)) return std::countr_zero(e);
        throw std::invalid_argument("degenerate counterpart chain");
    };
    int x1 = original_of(y1);
    int x2 = original_of(y2);
    (void)pivot_chain;
    return {
        {rem | bit(x1) | bit(x2), 0, y1}, {rem | bit(x1), bit(y2), x2},
        {rem | bit(x1), 0, x2},           {rem, bit(y2), x1},
        {rem, bit(y1), y2},               {rem, 0, y2},
    };
}

bool verify_blocking_table(const ConstructedMarket& cm, const Guards& g) {
    const Market& m = cm.instance.market;
    const auto& profile = cm.instance.profile;
    if (cm.overlap == OverlapCase::SinglePair) {
        for (const auto& row : single_pair_table(cm)) {
            Cset y = row.pivot_side | row.rival_side;
            if (!is_allocation(m, y)) return false;
            auto blockers = blocking_contracts(m, profile, y);
            if (std::find(blockers.begin(), blockers.end(), row.blocker) == blockers.end())
                return false;
        }
    }
    // generic tail: an individually rational allocation missing part of the
    // base remainder is blocked by one of the missing contracts
    for (Cset y : enumerate_allocations(m, g)) {
        if (!is_individually_rational(m, profile, y).first) continue;
        Cset held = m.restrict(y, cm.pivot) & cm.base_remainder;
        if (held == cm.base_remainder) continue;
        auto blockers = blocking_contracts(m, profile, y);
        bool found = false;
        for (int z : m.members_lex(cm.base_remainder & ~held))
            if (std::find(blockers.begin(), blockers.end(), z) != blockers.end())
                found = true;
        if (!found) return false;
    }
    return true;
}

std::vector<AnalysisRow> blocking_analysis(const ConstructedMarket& cm, const Guards& g) {
    const Market& m = cm.instance.market;
    std::vector<AnalysisRow> out;
    for (Cset y : enumerate_allocations(m, g)) {
        if (!is_individually_rational(m, cm.instance.profile, y).first) continue;
        out.push_back({y, blocking_contracts(m, cm.instance.profile, y)});
    }
    return out;
}

}  // namespace psmatch
