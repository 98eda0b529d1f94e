#include "psmatch/io.hpp"

#include <fstream>
#include <set>

namespace psmatch {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void need_array_of_strings(const json& doc, const std::string& key,
                           std::vector<std::string>& out, std::vector<Violation>& v) {
    if (!doc.contains(key) || !doc[key].is_array()) {
        v.push_back({"missing-key", key, "expected an array of strings"});
        return;
    }
    for (const auto& e : doc[key]) {
        if (!e.is_string()) {
            v.push_back({"bad-type", key, "entries must be strings"});
            return;
        }
        out.push_back(e.get<std::string>());
    }
}

}  // namespace

ValidationOutcome validate_market(const json& doc) {
    ValidationOutcome out;
    auto& v = out.violations;
    if (!doc.is_object()) {
        v.push_back({"bad-document", "", "top level must be a JSON object"});
        return out;
    }

    std::vector<std::string> doctors, hospitals;
    need_array_of_strings(doc, "doctors", doctors, v);
    need_array_of_strings(doc, "hospitals", hospitals, v);

    std::set<std::string> seen_agents;
    for (const auto& d : doctors) {
        if (d.empty()) v.push_back({"empty-token", d, "doctor token is empty"});
        if (!seen_agents.insert(d).second)
            v.push_back({"duplicate-agent", d, "agent token appears more than once"});
    }
    for (const auto& h : hospitals) {
        if (h.empty()) v.push_back({"empty-token", h, "hospital token is empty"});
        if (!seen_agents.insert(h).second)
            v.push_back({"duplicate-agent", h, "agent token appears more than once"});
    }

    std::vector<Contract> contracts;
    if (!doc.contains("contracts") || !doc["contracts"].is_array()) {
        v.push_back({"missing-key", "contracts", "expected an array of objects"});
    } else {
        std::set<std::string> seen_ids;
        for (const auto& e : doc["contracts"]) {
            if (!e.is_object() || !e.contains("id") || !e.contains("doctor") ||
                !e.contains("hospital")) {
                v.push_back({"bad-contract", "", "contract needs id, doctor, hospital"});
                continue;
            }
            Contract c{e["id"].get<std::string>(), e["doctor"].get<std::string>(),
                       e["hospital"].get<std::string>()};
            if (c.id.empty()) v.push_back({"empty-token", c.id, "contract id is empty"});
            if (!seen_ids.insert(c.id).second)
                v.push_back({"duplicate-id", c.id, "contract id appears more than once"});
            if (std::find(doctors.begin(), doctors.end(), c.doctor) == doctors.end())
                v.push_back({"unknown-agent", c.id, "doctor " + c.doctor + " not in market"});
            if (std::find(hospitals.begin(), hospitals.end(), c.hospital) == hospitals.end())
                v.push_back({"unknown-agent", c.id, "hospital " + c.hospital + " not in market"});
            contracts.push_back(std::move(c));
        }
    }
    if (!v.empty()) return out;

    Market market(doctors, hospitals, contracts);

    PreferenceProfile profile;
    if (!doc.contains("preferences") || !doc["preferences"].is_object()) {
        v.push_back({"missing-key", "preferences", "expected an object agent -> chains"});
        return out;
    }
    for (const auto& [agent, chain_doc] : doc["preferences"].items()) {
        if (!market.has_agent(agent)) {
            v.push_back({"unknown-agent", agent, "preference for unlisted agent"});
            continue;
        }
        PreferenceRelation pref{agent, {}};
        if (!chain_doc.is_array() || chain_doc.empty()) {
            v.push_back({"bad-chain", agent, "chain must be a nonempty array of arrays"});
            continue;
        }
        bool bad = false;
        for (const auto& entry_doc : chain_doc) {
            if (!entry_doc.is_array()) {
                v.push_back({"bad-chain", agent, "chain entries must be arrays of ids"});
                bad = true;
                break;
            }
            Cset entry = 0;
            for (const auto& idj : entry_doc) {
                int ci = market.contract_index(idj.get<std::string>());
                if (ci < 0) {
                    v.push_back({"unknown-contract", agent,
                                 "chain references unknown id " + idj.get<std::string>()});
                    bad = true;
                    break;
                }
                entry |= Cset{1} << ci;
            }
            if (bad) break;
            pref.chain.push_back(entry);
        }
        if (bad) continue;
        for (size_t i = 0; i < pref.chain.size(); ++i) {
            Cset entry = pref.chain[i];
            if (!market.feasible_for(entry, agent))
                v.push_back({"infeasible-entry", agent,
                             "chain entry " + market.set_label(entry) + " is not feasible"});
            for (size_t j = i + 1; j < pref.chain.size(); ++j)
                if (pref.chain[j] == entry)
                    v.push_back({"duplicate-entry", agent,
                                 "chain entry " + market.set_label(entry) + " repeats"});
            if (entry == 0 && i + 1 != pref.chain.size())
                v.push_back({"misplaced-empty", agent, "null set must be the last entry"});
        }
        if (pref.chain.back() != 0)
            v.push_back({"missing-empty", agent, "chain must end with the null set"});
        profile.by_agent.emplace(agent, std::move(pref));
    }
    for (const auto& a : market.agents())
        if (!profile.by_agent.count(a))
            v.push_back({"missing-preference", a, "agent has no preference chain"});

    if (!v.empty()) return out;
    out.instance = Instance{std::move(market), std::move(profile)};
    return out;
}

ValidationOutcome load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ValidationOutcome out;
        out.violations.push_back({"io-error", path, "cannot open file"});
        return out;
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        ValidationOutcome out;
        out.violations.push_back({"parse-error", path, e.what()});
        return out;
    }
    return validate_market(doc);
}

ordered_json chain_to_json(const Market& m, const PreferenceRelation& p) {
    ordered_json chain = ordered_json::array();
    for (Cset entry : p.chain) chain.push_back(m.set_ids(entry));
    return chain;
}

ordered_json instance_to_json(const Instance& inst) {
    const Market& m = inst.market;
    ordered_json doc;
    doc["doctors"] = m.doctors();
    doc["hospitals"] = m.hospitals();
    ordered_json contracts = ordered_json::array();
    for (const auto& c : m.contracts())
        contracts.push_back({{"id", c.id}, {"doctor", c.doctor}, {"hospital", c.hospital}});
    doc["contracts"] = std::move(contracts);
    ordered_json prefs;
    for (const auto& a : m.agents())
        prefs[a] = chain_to_json(m, inst.profile.at(a));
    doc["preferences"] = std::move(prefs);
    return doc;
}

void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write " + path);
    outf << instance_to_json(inst).dump(2) << '\n';
}

}  // namespace psmatch
