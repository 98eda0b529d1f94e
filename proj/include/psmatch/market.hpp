#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psmatch {

// A set of contracts, one bit per index into Market::contracts().
using Cset = std::uint32_t;

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance-size limits for the exhaustive procedures. Exceeding a guard is
// an explicit error, never silent truncation.
struct Guards {
    int max_contracts_pairwise = 12;
    int max_contracts_corewise = 10;
    int max_agent_contracts = 5;
    int max_family = 12;
    int max_completion_contracts = 4;
    long long max_work = 20'000'000;
};

struct Contract {
    std::string id;
    std::string doctor;
    std::string hospital;
};

class Market {
public:
    Market() = default;
    Market(std::vector<std::string> doctors, std::vector<std::string> hospitals,
           std::vector<Contract> contracts);

    const std::vector<std::string>& doctors() const { return doctors_; }
    const std::vector<std::string>& hospitals() const { return hospitals_; }
    const std::vector<Contract>& contracts() const { return contracts_; }
    int size() const { return static_cast<int>(contracts_.size()); }

    bool is_doctor(const std::string& a) const;
    bool is_hospital(const std::string& a) const;
    bool has_agent(const std::string& a) const { return is_doctor(a) || is_hospital(a); }
    std::vector<std::string> agents() const;  // doctors then hospitals, market order

    int contract_index(const std::string& id) const;  // -1 if unknown
    const std::string& counterpart(int ci, const std::string& agent) const;

    // X_a: all contracts involving the agent.
    Cset agent_contracts(const std::string& a) const;
    // X'_a
    Cset restrict(Cset s, const std::string& a) const { return s & agent_contracts(a); }
    // s in feasible sets of a: s subset of X_a, at most one contract per counterpart.
    bool feasible_for(Cset s, const std::string& a) const;
    // All feasible subsets of X_a, in canonical set order. Always contains 0.
    std::vector<Cset> feasible_sets(const std::string& a) const;

    // Canonical total order on contract sets: lexicographic comparison of the
    // id-sorted member sequences.
    bool set_less(Cset a, Cset b) const;
    // Members of s as indices, in lexicographic id order.
    std::vector<int> members_lex(Cset s) const;
    std::vector<std::string> set_ids(Cset s) const;
    std::string set_label(Cset s) const;  // "{x,y}" style, "{}" for the null set
    // Parse a list of ids into a mask; throws std::invalid_argument on unknown id.
    Cset set_from_ids(const std::vector<std::string>& ids) const;

    // All submasks of universe, sorted by set_less.
    std::vector<Cset> submasks_sorted(Cset universe) const;

private:
    std::vector<std::string> doctors_;
    std::vector<std::string> hospitals_;
    std::vector<Contract> contracts_;
    std::vector<int> lex_order_;  // contract indices sorted by id
    std::vector<int> lex_rank_;   // inverse of lex_order_
    std::map<std::string, int> by_id_;
    std::map<std::string, Cset> by_agent_;

    Cset rank_mask(Cset s) const;
};

// An agent's strict ranking of feasible contract sets, stored as the
// acceptable chain; the final entry is always the null set. Sets absent
// from the chain are unacceptable.
struct PreferenceRelation {
    std::string agent;
    std::vector<Cset> chain;

    bool operator==(const PreferenceRelation&) const = default;
};

struct PreferenceProfile {
    std::map<std::string, PreferenceRelation> by_agent;

    const PreferenceRelation& at(const std::string& a) const { return by_agent.at(a); }
    bool operator==(const PreferenceProfile&) const = default;
};

struct Instance {
    Market market;
    PreferenceProfile profile;
};

// C_a^P(offers): the chain-maximal entry contained in the offers restricted
// to the agent. The terminal null set makes this total.
Cset choice(const Market& m, const PreferenceRelation& p, Cset offers);

// Choice induced by an explicit chain (used for completion chains, whose
// entries need not be feasible). The chain must end with the null set.
Cset choice_chain(const Market& m, const std::string& agent,
                  const std::vector<Cset>& chain, Cset offers);

struct Violation {
    std::string code;
    std::string entity;
    std::string detail;
};

struct ValidationOutcome {
    std::optional<Instance> instance;
    std::vector<Violation> violations;

    bool ok() const { return instance.has_value(); }
};

}  // namespace psmatch
