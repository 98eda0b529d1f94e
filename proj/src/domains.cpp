#include "psmatch/domains.hpp"

#include <algorithm>
#include <set>

#include "psmatch/choice_analysis.hpp"
#include "psmatch/subpref.hpp"

namespace psmatch {

namespace {

Cset bit(int i) { return Cset{1} << i; }

// Substitutability of a (possibly partial) chain, restricted to the menus
// whose choice the chain prefix already determines.
bool prefix_substitutable(const Market& m, const std::vector<Cset>& prefix,
                          Cset universe) {
    int n = std::popcount(universe);
    std::vector<Cset> decided(std::size_t{1} << n, 0);
    std::vector<bool> known(std::size_t{1} << n, false);
    std::vector<int> idx = m.members_lex(universe);
    auto expand = [&](unsigned compact) {
        Cset s = 0;
        for (int k = 0; k < n; ++k)
            if (compact & (1u << k)) s |= bit(idx[k]);
        return s;
    };
    for (unsigned c = 0; c < (1u << n); ++c) {
        Cset menu = expand(c);
        for (Cset entry : prefix)
            if ((entry & ~menu) == 0) {
                decided[c] = entry;
                known[c] = true;
                break;
            }
    }
    for (unsigned c = 0; c < (1u << n); ++c) {
        if (!known[c]) continue;
        for (int k = 0; k < n; ++k) {
            if (!(c & (1u << k))) continue;
            unsigned reduced = c & ~(1u << k);
            if (!known[reduced]) continue;
            Cset kept = decided[c] & ~bit(idx[k]);
            if ((kept & ~decided[reduced]) != 0) return false;
        }
    }
    return true;
}

struct CompletionSearch {
    const Market& m;
    const std::string& agent;
    Cset universe;
    std::vector<Cset> originals;     // input chain minus the null set, in order
    std::vector<Cset> insertable;    // candidate extra entries, set order
    std::vector<bool> used;
    std::vector<Cset> prefix;
    long long work = 0;
    long long max_work;
    std::optional<std::vector<Cset>> found;

    bool shadowed(Cset s) const {
        for (Cset e : prefix)
            if ((e & ~s) == 0) return true;
        return false;
    }

    void dfs(size_t next_original) {
        if (found) return;
        if (++work > max_work)
            throw GuardExceeded("completion search exceeds work guard");
        if (!prefix_substitutable(m, prefix, universe)) return;
        if (next_original == originals.size()) {
            std::vector<Cset> full = prefix;
            full.push_back(0);
            if (prefix_substitutable(m, full, universe)) {
                found = full;
                return;
            }
        } else {
            prefix.push_back(originals[next_original]);
            dfs(next_original + 1);
            prefix.pop_back();
            if (found) return;
        }
        for (size_t i = 0; i < insertable.size(); ++i) {
            if (used[i] || shadowed(insertable[i])) continue;
            used[i] = true;
            prefix.push_back(insertable[i]);
            dfs(next_original);
            prefix.pop_back();
            used[i] = false;
            if (found) return;
        }
    }
};

}  // namespace

std::optional<BilateralWitness> bilateral_witness(const Market& m,
                                                  const PreferenceRelation& p,
                                                  const Guards& g) {
    Cset xa = m.agent_contracts(p.agent);
    if (std::popcount(xa) > g.max_agent_contracts)
        throw GuardExceeded("agent " + p.agent + " exceeds the contract guard");
    for (Cset menu : m.submasks_sorted(xa)) {
        std::set<std::string> menu_counterparts;
        for (Cset rest = menu; rest;) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            menu_counterparts.insert(m.counterpart(i, p.agent));
        }
        std::vector<int> outside;
        for (int i : m.members_lex(xa & ~menu))
            if (!menu_counterparts.count(m.counterpart(i, p.agent))) outside.push_back(i);
        for (int newcomer : outside)
            for (int revived : outside) {
                if (newcomer == revived) continue;
                if (!(choice(m, p, menu | bit(revived)) & bit(revived)) &&
                    (choice(m, p, menu | bit(newcomer) | bit(revived)) & bit(revived)))
                    return BilateralWitness{newcomer, revived, menu};
            }
    }
    return std::nullopt;
}

bool is_bilaterally_substitutable(const Market& m, const PreferenceRelation& p,
                                  const Guards& g) {
    return !bilateral_witness(m, p, g).has_value();
}

std::optional<std::vector<Cset>> substitutable_completion(const Market& m,
                                                          const PreferenceRelation& p,
                                                          const Guards& g, bool permissive) {
    Cset xa = m.agent_contracts(p.agent);
    if (std::popcount(xa) > g.max_completion_contracts)
        throw GuardExceeded("agent " + p.agent + " exceeds the completion guard");
    std::vector<Cset> chain_sets(p.chain.begin(), p.chain.end());
    std::vector<Cset> insertable;
    for (Cset s = xa; s; s = (s - 1) & xa) {
        bool in_chain = std::find(chain_sets.begin(), chain_sets.end(), s) != chain_sets.end();
        if (in_chain) continue;
        if (!m.feasible_for(s, p.agent) || permissive) insertable.push_back(s);
    }
    std::sort(insertable.begin(), insertable.end(),
              [&](Cset a, Cset b) { return m.set_less(a, b); });

    CompletionSearch search{m, p.agent, xa, {}, std::move(insertable),
                            {},       {},      0, g.max_work, std::nullopt};
    search.originals.assign(p.chain.begin(), p.chain.end() - 1);
    search.used.assign(search.insertable.size(), false);
    search.dfs(0);
    return search.found;
}

bool has_substitutable_completion(const Market& m, const PreferenceRelation& p,
                                  const Guards& g) {
    return substitutable_completion(m, p, g).has_value();
}

DomainClassification classify(const Market& m, const PreferenceRelation& p,
                              const Guards& g) {
    DomainClassification c;
    c.substitutable = is_substitutable(m, p, g);
    c.pseudo_substitutable = is_pseudo_substitutable(m, p, g).holds;
    c.bilaterally_substitutable = is_bilaterally_substitutable(m, p, g);
    c.completion_witness = substitutable_completion(m, p, g);
    c.substitutably_completable = c.completion_witness.has_value();
    return c;
}

}  // namespace psmatch
