#include "psmatch/choice_analysis.hpp"

#include <algorithm>

namespace psmatch {

namespace {

void check_agent_guard(const Market& m, const PreferenceRelation& p, const Guards& g) {
    if (std::popcount(m.agent_contracts(p.agent)) > g.max_agent_contracts)
        throw GuardExceeded("agent " + p.agent + " exceeds the contract guard");
}

}  // namespace

std::vector<Cset> acceptable_sets(const Market& m, const PreferenceRelation& p) {
    std::vector<Cset> out;
    for (Cset s : m.feasible_sets(p.agent))
        if (choice(m, p, s) == s) out.push_back(s);
    return out;
}

std::optional<SubstitutabilityWitness> substitutability_witness(const Market& m,
                                                                const PreferenceRelation& p,
                                                                const Guards& g) {
    check_agent_guard(m, p, g);
    for (Cset menu : m.submasks_sorted(m.agent_contracts(p.agent))) {
        Cset chosen = choice(m, p, menu);
        for (int removed : m.members_lex(menu)) {
            Cset reduced = choice(m, p, menu & ~(Cset{1} << removed));
            for (int dropped : m.members_lex(chosen)) {
                if (dropped == removed) continue;
                if (!(reduced & (Cset{1} << dropped)))
                    return SubstitutabilityWitness{menu, removed, dropped};
            }
        }
    }
    return std::nullopt;
}

bool is_substitutable(const Market& m, const PreferenceRelation& p, const Guards& g) {
    return !substitutability_witness(m, p, g).has_value();
}

bool verify_remark1(const Market& m, const PreferenceRelation& p, const Guards& g) {
    check_agent_guard(m, p, g);
    bool removal_form = is_substitutable(m, p, g);
    bool inclusion_form = true;
    Cset xa = m.agent_contracts(p.agent);
    for (Cset big = xa; inclusion_form; big = (big - 1) & xa) {
        Cset cbig = choice(m, p, big);
        for (Cset small = big;; small = (small - 1) & big) {
            if ((cbig & small & ~choice(m, p, small)) != 0) {
                inclusion_form = false;
                break;
            }
            if (small == 0) break;
        }
        if (big == 0) break;
    }
    return removal_form == inclusion_form;
}

std::optional<PathIndependenceWitness> path_independence_witness(const Market& m,
                                                                 const PreferenceRelation& p,
                                                                 const Guards& g) {
    check_agent_guard(m, p, g);
    auto menus = m.submasks_sorted(m.agent_contracts(p.agent));
    for (Cset first : menus) {
        Cset cfirst = choice(m, p, first);
        for (Cset second : menus)
            if (choice(m, p, first | second) != choice(m, p, cfirst | second))
                return PathIndependenceWitness{first, second};
    }
    return std::nullopt;
}

bool is_path_independent(const Market& m, const PreferenceRelation& p, const Guards& g) {
    return !path_independence_witness(m, p, g).has_value();
}

bool verify_consistency(const Market& m, const PreferenceRelation& p, const Guards& g) {
    check_agent_guard(m, p, g);
    Cset xa = m.agent_contracts(p.agent);
    for (Cset menu = xa;; menu = (menu - 1) & xa) {
        Cset chosen = choice(m, p, menu);
        Cset slack = menu & ~chosen;
        for (Cset extra = slack;; extra = (extra - 1) & slack) {
            if (choice(m, p, chosen | extra) != chosen) return false;
            if (extra == 0) break;
        }
        if (menu == 0) break;
    }
    return true;
}

BlairVerdict blair_compare(const Market& m, const PreferenceRelation& p, Cset x1, Cset x2) {
    if (!m.feasible_for(x1, p.agent) || !m.feasible_for(x2, p.agent))
        throw std::invalid_argument("blair_compare: infeasible input for " + p.agent);
    if (x1 == x2) return BlairVerdict::Equal;
    Cset both = choice(m, p, x1 | x2);
    if (both == x1) return BlairVerdict::FirstPreferred;
    if (both == x2) return BlairVerdict::SecondPreferred;
    return BlairVerdict::Incomparable;
}

std::vector<ComplementarityRecord> complementarity_report(const Market& m,
                                                          const PreferenceRelation& p,
                                                          const Guards& g) {
    check_agent_guard(m, p, g);
    std::vector<ComplementarityRecord> out;
    for (Cset base : acceptable_sets(m, p)) {
        auto members = m.members_lex(base);
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                int a = members[i], b = members[j];
                bool a_survives =
                    (choice(m, p, base & ~(Cset{1} << b)) & (Cset{1} << a)) != 0;
                bool b_survives =
                    (choice(m, p, base & ~(Cset{1} << a)) & (Cset{1} << b)) != 0;
                if (!a_survives && !b_survives)
                    out.push_back({base, ComplementarityKind::BiComplementary, a, b});
                else if (!a_survives && b_survives)
                    out.push_back({base, ComplementarityKind::OneWay, a, b});
                else if (a_survives && !b_survives)
                    out.push_back({base, ComplementarityKind::OneWay, b, a});
            }
        }
    }
    return out;
}

}  // namespace psmatch
