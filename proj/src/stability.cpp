#include "psmatch/stability.hpp"

#include <algorithm>

#include "psmatch/subpref.hpp"

namespace psmatch {

namespace {

Cset bit(int i) { return Cset{1} << i; }

std::vector<std::string> agents_of(const Market& m, Cset s) {
    std::vector<std::string> out;
    for (Cset rest = s; rest;) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        const Contract& c = m.contracts()[i];
        if (std::find(out.begin(), out.end(), c.doctor) == out.end()) out.push_back(c.doctor);
        if (std::find(out.begin(), out.end(), c.hospital) == out.end())
            out.push_back(c.hospital);
    }
    return out;
}

}  // namespace

bool is_allocation(const Market& m, Cset y) {
    // feasible for every agent, i.e. no two contracts share a doctor-hospital pair
    for (Cset rest = y; rest;) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        for (Cset other = rest; other;) {
            int j = std::countr_zero(other);
            other &= other - 1;
            if (m.contracts()[i].doctor == m.contracts()[j].doctor &&
                m.contracts()[i].hospital == m.contracts()[j].hospital)
                return false;
        }
    }
    return true;
}

std::vector<Cset> enumerate_allocations(const Market& m, const Guards& g) {
    if (m.size() > g.max_contracts_pairwise)
        throw GuardExceeded("market exceeds the pairwise enumeration guard");
    Cset all = m.size() == 0 ? 0 : (bit(m.size()) - 1);
    std::vector<Cset> out;
    for (Cset y = all;; y = (y - 1) & all) {
        if (is_allocation(m, y)) out.push_back(y);
        if (y == 0) break;
    }
    std::sort(out.begin(), out.end(), [&](Cset a, Cset b) { return m.set_less(a, b); });
    return out;
}

std::pair<bool, std::optional<std::string>> is_individually_rational(
    const Market& m, const PreferenceProfile& profile, Cset y) {
    if (!is_allocation(m, y)) throw std::invalid_argument("not an allocation");
    for (const auto& a : m.agents())
        if (choice(m, profile.at(a), y) != m.restrict(y, a)) return {false, a};
    return {true, std::nullopt};
}

std::vector<int> blocking_contracts(const Market& m, const PreferenceProfile& profile,
                                    Cset y) {
    if (!is_allocation(m, y)) throw std::invalid_argument("not an allocation");
    std::vector<int> out;
    Cset all = m.size() == 0 ? 0 : (bit(m.size()) - 1);
    for (int x : m.members_lex(all & ~y)) {
        const Contract& c = m.contracts()[x];
        Cset extended = y | bit(x);
        if ((choice(m, profile.at(c.doctor), extended) & bit(x)) &&
            (choice(m, profile.at(c.hospital), extended) & bit(x)))
            out.push_back(x);
    }
    return out;
}

bool is_pairwise_stable(const Market& m, const PreferenceProfile& profile, Cset y) {
    return is_individually_rational(m, profile, y).first &&
           blocking_contracts(m, profile, y).empty();
}

std::vector<Cset> stable_set(const Market& m, const PreferenceProfile& profile,
                             const Guards& g) {
    std::vector<Cset> out;
    for (Cset y : enumerate_allocations(m, g))
        if (is_pairwise_stable(m, profile, y)) out.push_back(y);
    return out;
}

std::pair<bool, std::optional<Cset>> is_corewise_stable(const Market& m,
                                                        const PreferenceProfile& profile,
                                                        Cset y, const Guards& g) {
    if (m.size() > g.max_contracts_corewise)
        throw GuardExceeded("market exceeds the corewise enumeration guard");
    if (!is_allocation(m, y)) throw std::invalid_argument("not an allocation");
    if (!is_individually_rational(m, profile, y).first) return {false, std::nullopt};
    Cset all = m.size() == 0 ? 0 : (bit(m.size()) - 1);
    Cset outside = all & ~y;
    for (Cset dev : m.submasks_sorted(outside)) {
        if (dev == 0) continue;
        // an infeasible restriction can never be contained in a choice,
        // so the filter below only skips hopeless candidates
        bool works = true;
        for (const auto& a : agents_of(m, dev)) {
            Cset dev_a = m.restrict(dev, a);
            if (!m.feasible_for(dev_a, a) ||
                (choice(m, profile.at(a), y | dev) & dev_a) != dev_a) {
                works = false;
                break;
            }
        }
        if (works) return {false, dev};
    }
    return {true, std::nullopt};
}

bool verify_inclusion(const Market& m, const PreferenceProfile& subprofile,
                      const PreferenceProfile& profile, const Guards& g) {
    for (const auto& a : m.agents())
        if (!is_subpreference(m, subprofile.at(a), profile.at(a)))
            throw std::invalid_argument("verify_inclusion: profiles are not ordered for " + a);
    auto sub_stable = stable_set(m, subprofile, g);
    auto sup_stable = stable_set(m, profile, g);
    for (Cset y : sub_stable)
        if (std::find(sup_stable.begin(), sup_stable.end(), y) == sup_stable.end())
            return false;
    return true;
}

StabilityReport stability_report(const Market& m, const PreferenceProfile& profile,
                                 Cset y, bool with_corewise, const Guards& g) {
    StabilityReport r;
    r.allocation = y;
    r.individually_rational = is_individually_rational(m, profile, y).first;
    r.blockers = blocking_contracts(m, profile, y);
    r.pairwise_stable = r.individually_rational && r.blockers.empty();
    r.corewise_stable = with_corewise && is_corewise_stable(m, profile, y, g).first;
    return r;
}

}  // namespace psmatch
