#include "psmatch/subpref.hpp"

#include <algorithm>

namespace psmatch {

namespace {

Cset bit(int i) { return Cset{1} << i; }

// Lexicographic linear extensions of the strict-superset-first order on
// family (entries pre-sorted in set order). Visits full chains; returns
// false when the visitor stops the walk.
bool extensions_rec(const Market& m, std::vector<Cset>& family, std::vector<bool>& used,
                    std::vector<Cset>& prefix, long long& work, long long max_work,
                    const std::function<bool(const std::vector<Cset>&)>& visit) {
    if (prefix.size() == family.size()) {
        if (++work > max_work) throw GuardExceeded("sub-preference search exceeds work guard");
        return visit(prefix);
    }
    for (size_t i = 0; i < family.size(); ++i) {
        if (used[i]) continue;
        bool maximal = true;
        for (size_t j = 0; j < family.size() && maximal; ++j)
            if (!used[j] && j != i && (family[i] & ~family[j]) == 0) maximal = false;
        if (!maximal) continue;
        used[i] = true;
        prefix.push_back(family[i]);
        bool go_on = extensions_rec(m, family, used, prefix, work, max_work, visit);
        prefix.pop_back();
        used[i] = false;
        if (!go_on) return false;
    }
    return true;
}

bool for_each_extension(const Market& m, std::vector<Cset> family, long long& work,
                        long long max_work,
                        const std::function<bool(const std::vector<Cset>&)>& visit) {
    std::vector<bool> used(family.size(), false);
    std::vector<Cset> prefix;
    prefix.reserve(family.size());
    return extensions_rec(m, family, used, prefix, work, max_work, visit);
}

// Visits canonical preferences for every subfamily of pool (plus the null
// set), subject to keep(candidate); families by increasing size then set
// order, extensions lexicographic.
void for_each_family_chain(const Market& m, const std::string& agent,
                           const std::vector<Cset>& pool, long long max_work,
                           const std::function<bool(const PreferenceRelation&)>& visit) {
    long long work = 0;
    int n = static_cast<int>(pool.size());
    for (int k = 0; k <= n; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<Cset> family;
            family.reserve(k);
            for (int i : idx) family.push_back(pool[i]);
            bool go_on = for_each_extension(
                m, family, work, max_work, [&](const std::vector<Cset>& order) {
                    PreferenceRelation cand{agent, order};
                    cand.chain.push_back(0);
                    return visit(cand);
                });
            if (!go_on) return;
            // next combination in lexicographic order
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

std::vector<Cset> nonempty_family(const Market& m, const PreferenceRelation& p) {
    std::vector<Cset> fam;
    for (Cset s : acceptable_sets(m, p))
        if (s != 0) fam.push_back(s);
    return fam;
}

}  // namespace

std::optional<SubprefWitness> subpreference_witness(const Market& m,
                                                    const PreferenceRelation& sub,
                                                    const PreferenceRelation& sup) {
    if (sub.agent != sup.agent)
        throw std::invalid_argument("sub-preference comparison across agents");
    Cset xa = m.agent_contracts(sub.agent);
    for (Cset menu : acceptable_sets(m, sub)) {
        if (choice(m, sup, menu) != menu)
            return SubprefWitness{SubprefBreach::AcceptabilityBreach, menu, std::nullopt};
        for (int x : m.members_lex(xa & ~menu)) {
            Cset extended = menu | bit(x);
            if ((choice(m, sup, extended) & bit(x)) && !(choice(m, sub, extended) & bit(x)))
                return SubprefWitness{SubprefBreach::BlockingBreach, menu, x};
        }
    }
    return std::nullopt;
}

bool is_subpreference(const Market& m, const PreferenceRelation& sub,
                      const PreferenceRelation& sup) {
    return !subpreference_witness(m, sub, sup).has_value();
}

PreferenceRelation canonicalize(const Market&, const PreferenceRelation& p) {
    PreferenceRelation out{p.agent, {}};
    for (size_t i = 0; i < p.chain.size(); ++i) {
        Cset entry = p.chain[i];
        if (entry == 0) continue;
        bool shadowed = false;
        for (size_t j = 0; j < i && !shadowed; ++j)
            if (p.chain[j] != entry && (p.chain[j] & ~entry) == 0) shadowed = true;
        if (!shadowed) out.chain.push_back(entry);
    }
    out.chain.push_back(0);
    return out;
}

void for_each_canonical_subpreference(
    const Market& m, const PreferenceRelation& sup, const Guards& g,
    const std::function<bool(const PreferenceRelation&)>& visit) {
    auto family = acceptable_sets(m, sup);
    if (static_cast<int>(family.size()) > g.max_family)
        throw GuardExceeded("acceptable family of " + sup.agent + " exceeds the family guard");
    auto pool = nonempty_family(m, sup);
    for_each_family_chain(m, sup.agent, pool, g.max_work,
                          [&](const PreferenceRelation& cand) {
                              if (!is_subpreference(m, cand, sup)) return true;
                              return visit(cand);
                          });
}

std::vector<PreferenceRelation> enumerate_canonical_subpreferences(
    const Market& m, const PreferenceRelation& sup, const Guards& g) {
    std::vector<PreferenceRelation> out;
    for_each_canonical_subpreference(m, sup, g, [&](const PreferenceRelation& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

bool is_minimal(const Market& m, const PreferenceRelation& sub,
                const PreferenceRelation& sup, const Guards& g) {
    if (!is_subpreference(m, sub, sup))
        throw std::invalid_argument("is_minimal: sub is not a sub-preference of sup");
    auto sub_family = nonempty_family(m, sub);
    if (static_cast<int>(sub_family.size()) + 1 > g.max_family)
        throw GuardExceeded("acceptable family exceeds the family guard");
    // Only families strictly inside A(sub) can disprove minimality.
    bool minimal = true;
    for_each_family_chain(m, sub.agent, sub_family, g.max_work,
                          [&](const PreferenceRelation& cand) {
                              if (cand.chain.size() == sub_family.size() + 1) return true;
                              if (is_subpreference(m, cand, sup)) {
                                  minimal = false;
                                  return false;
                              }
                              return true;
                          });
    return minimal;
}

std::vector<PreferenceRelation> minimal_subpreferences(const Market& m,
                                                       const PreferenceRelation& sup,
                                                       const Guards& g) {
    auto all = enumerate_canonical_subpreferences(m, sup, g);
    std::vector<std::vector<Cset>> families;
    families.reserve(all.size());
    for (const auto& p : all) {
        auto fam = p.chain;  // canonical: chain minus null set is the family
        fam.pop_back();
        std::sort(fam.begin(), fam.end());
        families.push_back(std::move(fam));
    }
    auto strictly_contains = [](const std::vector<Cset>& big, const std::vector<Cset>& small) {
        return small.size() < big.size() &&
               std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    std::vector<PreferenceRelation> out;
    for (size_t i = 0; i < all.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < all.size() && minimal; ++j)
            if (strictly_contains(families[i], families[j])) minimal = false;
        if (minimal) out.push_back(all[i]);
    }
    return out;
}

std::optional<PreferenceRelation> find_substitutable_subpreference(
    const Market& m, const PreferenceRelation& sup, const Guards& g) {
    std::optional<PreferenceRelation> found;
    for_each_canonical_subpreference(m, sup, g, [&](const PreferenceRelation& p) {
        if (is_substitutable(m, p, g)) {
            found = p;
            return false;
        }
        return true;
    });
    return found;
}

PreferenceRelation reduce_minimal(const Market& m, const PreferenceRelation& sup,
                                  const Guards& g) {
    PreferenceRelation current = canonicalize(m, sup);
    for (;;) {
        std::vector<Cset> bases;
        for (const auto& rec : complementarity_report(m, current, g))
            if (rec.kind == ComplementarityKind::BiComplementary &&
                (bases.empty() || bases.back() != rec.base))
                bases.push_back(rec.base);
        std::sort(bases.begin(), bases.end(),
                  [&](Cset a, Cset b) { return m.set_less(a, b); });
        bool progressed = false;
        for (Cset base : bases) {
            PreferenceRelation cand{current.agent, {}};
            for (Cset e : current.chain)
                if (e != base) cand.chain.push_back(e);
            if (is_subpreference(m, cand, sup)) {
                current = std::move(cand);
                progressed = true;
                break;
            }
        }
        if (!progressed) return current;
    }
}

std::optional<PreferenceRelation> fast_pseudo_certificate(const Market& m,
                                                          const PreferenceRelation& sup,
                                                          const Guards& g) {
    PreferenceRelation fixed = reduce_minimal(m, sup, g);
    std::vector<Cset> family(fixed.chain.begin(), fixed.chain.end() - 1);
    std::sort(family.begin(), family.end(),
              [&](Cset a, Cset b) { return m.set_less(a, b); });
    std::optional<PreferenceRelation> found;
    long long work = 0;
    for_each_extension(m, family, work, g.max_work, [&](const std::vector<Cset>& order) {
        PreferenceRelation cand{sup.agent, order};
        cand.chain.push_back(0);
        if (is_subpreference(m, cand, sup) && is_substitutable(m, cand, g)) {
            found = cand;
            return false;
        }
        return true;
    });
    return found;
}

PseudoVerdict is_pseudo_substitutable(const Market& m, const PreferenceRelation& pref,
                                      const Guards& g) {
    PseudoVerdict verdict;
    verdict.certificate = find_substitutable_subpreference(m, pref, g);
    verdict.holds = verdict.certificate.has_value();
    if (!verdict.holds) {
        for (const auto& mini : minimal_subpreferences(m, pref, g)) {
            std::optional<ComplementarityRecord> oneway;
            for (const auto& rec : complementarity_report(m, mini, g))
                if (rec.kind == ComplementarityKind::OneWay) {
                    oneway = rec;
                    break;
                }
            verdict.refutation.emplace_back(mini, oneway);
        }
    }
    return verdict;
}

bool verify_transitivity(const Market& m, const PreferenceRelation& p3,
                         const PreferenceRelation& p2, const PreferenceRelation& p1) {
    if (!is_subpreference(m, p3, p2) || !is_subpreference(m, p2, p1))
        throw std::invalid_argument("verify_transitivity: premises do not hold");
    return is_subpreference(m, p3, p1);
}

bool verify_shared_structure(const Market& m, const PreferenceRelation& sup,
                             const Guards& g) {
    std::vector<PreferenceRelation> certs;
    for_each_canonical_subpreference(m, sup, g, [&](const PreferenceRelation& p) {
        if (is_substitutable(m, p, g)) certs.push_back(p);
        return true;
    });
    if (certs.empty()) return true;
    auto family_of = [](const PreferenceRelation& p) {
        std::vector<Cset> fam(p.chain.begin(), p.chain.end() - 1);
        std::sort(fam.begin(), fam.end());
        return fam;
    };
    auto shared = family_of(certs.front());
    for (const auto& c : certs) {
        if (family_of(c) != shared) return false;
        if (!is_minimal(m, c, sup, g)) return false;
    }
    shared.push_back(0);
    for (const auto& a : certs)
        for (const auto& b : certs)
            for (Cset x1 : shared)
                for (Cset x2 : shared) {
                    bool pa = choice(m, a, x1 | x2) == x1;
                    bool pb = choice(m, b, x1 | x2) == x1;
                    if (pa != pb) return false;
                }
    return true;
}

}  // namespace psmatch
