#include "psmatch/market.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace psmatch {

Market::Market(std::vector<std::string> doctors, std::vector<std::string> hospitals,
               std::vector<Contract> contracts)
    : doctors_(std::move(doctors)),
      hospitals_(std::move(hospitals)),
      contracts_(std::move(contracts)) {
    if (contracts_.size() > 31)
        throw GuardExceeded("market has more than 31 contracts");
    lex_order_.resize(contracts_.size());
    std::iota(lex_order_.begin(), lex_order_.end(), 0);
    std::sort(lex_order_.begin(), lex_order_.end(),
              [&](int a, int b) { return contracts_[a].id < contracts_[b].id; });
    lex_rank_.resize(contracts_.size());
    for (int r = 0; r < static_cast<int>(lex_order_.size()); ++r)
        lex_rank_[lex_order_[r]] = r;
    for (int i = 0; i < size(); ++i) {
        by_id_[contracts_[i].id] = i;
        by_agent_[contracts_[i].doctor] |= Cset{1} << i;
        by_agent_[contracts_[i].hospital] |= Cset{1} << i;
    }
}

bool Market::is_doctor(const std::string& a) const {
    return std::find(doctors_.begin(), doctors_.end(), a) != doctors_.end();
}

bool Market::is_hospital(const std::string& a) const {
    return std::find(hospitals_.begin(), hospitals_.end(), a) != hospitals_.end();
}

std::vector<std::string> Market::agents() const {
    std::vector<std::string> out = doctors_;
    out.insert(out.end(), hospitals_.begin(), hospitals_.end());
    return out;
}

int Market::contract_index(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? -1 : it->second;
}

const std::string& Market::counterpart(int ci, const std::string& agent) const {
    const Contract& c = contracts_.at(ci);
    return c.doctor == agent ? c.hospital : c.doctor;
}

Cset Market::agent_contracts(const std::string& a) const {
    auto it = by_agent_.find(a);
    return it == by_agent_.end() ? 0 : it->second;
}

bool Market::feasible_for(Cset s, const std::string& a) const {
    if ((s & ~agent_contracts(a)) != 0) return false;
    // unitarity: at most one contract per counterpart
    for (Cset rest = s; rest;) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        const std::string& cp = counterpart(i, a);
        for (Cset other = rest; other;) {
            int j = std::countr_zero(other);
            other &= other - 1;
            if (counterpart(j, a) == cp) return false;
        }
    }
    return true;
}

std::vector<Cset> Market::feasible_sets(const std::string& a) const {
    if (!has_agent(a)) throw std::invalid_argument("unknown agent: " + a);
    Cset xa = agent_contracts(a);
    std::vector<Cset> out;
    for (Cset s = xa;; s = (s - 1) & xa) {
        if (feasible_for(s, a)) out.push_back(s);
        if (s == 0) break;
    }
    std::sort(out.begin(), out.end(), [&](Cset x, Cset y) { return set_less(x, y); });
    return out;
}

Cset Market::rank_mask(Cset s) const {
    Cset r = 0;
    while (s) {
        int i = std::countr_zero(s);
        s &= s - 1;
        r |= Cset{1} << lex_rank_[i];
    }
    return r;
}

bool Market::set_less(Cset a, Cset b) const {
    if (a == b) return false;
    Cset ra = rank_mask(a), rb = rank_mask(b);
    Cset diff = ra ^ rb;
    Cset low = diff & (~diff + 1);
    bool a_has = (ra & low) != 0;
    // Bits of the lacking set at or above the first disagreement. If there
    // are none, the lacking set is a prefix of the other and sorts first.
    Cset lacking_rest = (a_has ? rb : ra) & ~(low - 1);
    return lacking_rest ? a_has : !a_has;
}

std::vector<int> Market::members_lex(Cset s) const {
    std::vector<int> out;
    for (int r = 0; r < static_cast<int>(lex_order_.size()); ++r) {
        int i = lex_order_[r];
        if (s & (Cset{1} << i)) out.push_back(i);
    }
    return out;
}

std::vector<std::string> Market::set_ids(Cset s) const {
    std::vector<std::string> out;
    for (int i : members_lex(s)) out.push_back(contracts_[i].id);
    return out;
}

std::string Market::set_label(Cset s) const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& id : set_ids(s)) {
        if (!first) os << ',';
        os << id;
        first = false;
    }
    os << '}';
    return os.str();
}

Cset Market::set_from_ids(const std::vector<std::string>& ids) const {
    Cset s = 0;
    for (const auto& id : ids) {
        int i = contract_index(id);
        if (i < 0) throw std::invalid_argument("unknown contract id: " + id);
        s |= Cset{1} << i;
    }
    return s;
}

std::vector<Cset> Market::submasks_sorted(Cset universe) const {
    std::vector<Cset> out;
    for (Cset s = universe;; s = (s - 1) & universe) {
        out.push_back(s);
        if (s == 0) break;
    }
    std::sort(out.begin(), out.end(), [&](Cset x, Cset y) { return set_less(x, y); });
    return out;
}

Cset choice_chain(const Market& m, const std::string& agent,
                  const std::vector<Cset>& chain, Cset offers) {
    Cset avail = m.restrict(offers, agent);
    for (Cset entry : chain)
        if ((entry & ~avail) == 0) return entry;
    return 0;
}

Cset choice(const Market& m, const PreferenceRelation& p, Cset offers) {
    return choice_chain(m, p.agent, p.chain, offers);
}

}  // namespace psmatch
