#include "psmatch/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "psmatch/choice_analysis.hpp"
#include "psmatch/counterexample.hpp"
#include "psmatch/domains.hpp"
#include "psmatch/gen.hpp"
#include "psmatch/io.hpp"
#include "psmatch/stability.hpp"
#include "psmatch/subpref.hpp"

namespace psmatch {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Ctx {
    Guards guards;
    std::string format = "table";
    std::uint64_t seed = 1;
};

Instance load(const std::string& path) {
    auto outcome = load_instance_file(path);
    if (!outcome.ok()) {
        std::string msg = "invalid market document " + path + ":";
        for (const auto& v : outcome.violations)
            msg += "\n  [" + v.code + "] " + v.entity + ": " + v.detail;
        throw UsageError(msg);
    }
    return *outcome.instance;
}

const PreferenceRelation& relation(const Instance& inst, const std::string& agent) {
    auto it = inst.profile.by_agent.find(agent);
    if (it == inst.profile.by_agent.end()) throw UsageError("unknown agent: " + agent);
    return it->second;
}

// translate a relation across market objects via contract ids
PreferenceRelation remap(const Market& to, const Market& from, const PreferenceRelation& p) {
    PreferenceRelation out{p.agent, {}};
    for (Cset e : p.chain) out.chain.push_back(to.set_from_ids(from.set_ids(e)));
    return out;
}

ordered_json ids_json(const Market& m, Cset s) {
    ordered_json a = ordered_json::array();
    for (const auto& id : m.set_ids(s)) a.push_back(id);
    return a;
}

ordered_json chain_json(const Market& m, const std::vector<Cset>& chain) {
    ordered_json a = ordered_json::array();
    for (Cset e : chain) a.push_back(ids_json(m, e));
    return a;
}

ordered_json make_report(const std::string& command,
                         const std::vector<std::string>& inputs) {
    ordered_json r;
    r["command"] = command;
    r["inputs"] = inputs;
    r["verdicts"] = ordered_json::array();
    return r;
}

void render_value(std::ostream& out, const std::string& key, const ordered_json& v,
                  int indent) {
    out << std::string(static_cast<size_t>(indent), ' ') << key << " = " << v.dump()
        << "\n";
}

void emit(const Ctx& ctx, std::ostream& out, const ordered_json& report) {
    if (ctx.format == "json") {
        out << report.dump(2) << "\n";
        return;
    }
    out << report.at("command").get<std::string>();
    for (const auto& f : report.at("inputs")) out << " " << f.get<std::string>();
    out << "\n";
    for (const auto& v : report.at("verdicts")) {
        out << "  " << v.at("predicate").get<std::string>();
        if (v.contains("holds")) out << ": " << (v.at("holds").get<bool>() ? "yes" : "no");
        out << "\n";
        for (const auto& [k, val] : v.items())
            if (k != "predicate" && k != "holds") render_value(out, k, val, 4);
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_validate(const Ctx& ctx, std::ostream& out, const std::string& file) {
    auto outcome = load_instance_file(file);
    ordered_json report = make_report("validate", {file});
    ordered_json verdict;
    verdict["predicate"] = "valid-market-document";
    verdict["holds"] = outcome.ok();
    ordered_json violations = ordered_json::array();
    bool unreadable = false;
    for (const auto& v : outcome.violations) {
        violations.push_back({{"code", v.code}, {"entity", v.entity}, {"detail", v.detail}});
        if (v.code == "io-error" || v.code == "parse-error") unreadable = true;
    }
    verdict["violations"] = violations;
    report["verdicts"].push_back(verdict);
    emit(ctx, out, report);
    if (unreadable) return 2;
    return outcome.ok() ? 0 : 1;
}

int cmd_choice(const Ctx& ctx, std::ostream& out, const std::string& file,
               const std::string& agent, const std::string& offer_csv) {
    Instance inst = load(file);
    const auto& p = relation(inst, agent);
    Cset offers = inst.market.set_from_ids(split_csv(offer_csv));
    Cset chosen = choice(inst.market, p, offers);
    ordered_json report = make_report("choice", {file});
    report["verdicts"].push_back({{"predicate", "choice"},
                                  {"agent", agent},
                                  {"offer", ids_json(inst.market, offers)},
                                  {"chosen", ids_json(inst.market, chosen)}});
    emit(ctx, out, report);
    return 0;
}

int cmd_substitutable(const Ctx& ctx, std::ostream& out, const std::string& file,
                      const std::string& agent) {
    Instance inst = load(file);
    auto w = substitutability_witness(inst.market, relation(inst, agent), ctx.guards);
    ordered_json report = make_report("substitutable", {file});
    ordered_json verdict;
    verdict["predicate"] = "substitutable";
    verdict["agent"] = agent;
    verdict["holds"] = !w.has_value();
    if (w) {
        verdict["witness"] = {{"menu", ids_json(inst.market, w->menu)},
                              {"removed", inst.market.contracts()[w->removed].id},
                              {"dropped", inst.market.contracts()[w->dropped].id}};
    }
    report["verdicts"].push_back(verdict);
    emit(ctx, out, report);
    return w ? 1 : 0;
}

int cmd_pseudo(const Ctx& ctx, std::ostream& out, const std::string& file,
               const std::string& agent, const std::string& cert_path) {
    Instance inst = load(file);
    auto verdict_ps = is_pseudo_substitutable(inst.market, relation(inst, agent), ctx.guards);
    ordered_json report = make_report("pseudo", {file});
    ordered_json verdict;
    verdict["predicate"] = "pseudo-substitutable";
    verdict["agent"] = agent;
    verdict["holds"] = verdict_ps.holds;
    if (verdict_ps.certificate)
        verdict["certificate"] = chain_json(inst.market, verdict_ps.certificate->chain);
    if (!verdict_ps.holds) {
        ordered_json refutation = ordered_json::array();
        for (const auto& [mini, oneway] : verdict_ps.refutation) {
            ordered_json entry;
            entry["minimal_sub"] = chain_json(inst.market, mini.chain);
            if (oneway)
                entry["complementary_pair"] = {
                    {"base", ids_json(inst.market, oneway->base)},
                    {"dependent", inst.market.contracts()[oneway->dependent].id},
                    {"support", inst.market.contracts()[oneway->support].id}};
            refutation.push_back(entry);
        }
        verdict["refutation"] = refutation;
    }
    report["verdicts"].push_back(verdict);
    emit(ctx, out, report);
    if (verdict_ps.holds && !cert_path.empty()) {
        ordered_json cert;
        cert["agent"] = agent;
        cert["chain"] = chain_json(inst.market, verdict_ps.certificate->chain);
        std::ofstream f(cert_path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + cert_path);
        f << cert.dump(2) << "\n";
    }
    return verdict_ps.holds ? 0 : 1;
}

int cmd_subpref(const Ctx& ctx, std::ostream& out, const std::string& file,
                const std::string& sub_file, const std::string& agent) {
    Instance sup = load(file);
    Instance sub = load(sub_file);
    PreferenceRelation sub_rel = remap(sup.market, sub.market, relation(sub, agent));
    auto w = subpreference_witness(sup.market, sub_rel, relation(sup, agent));
    ordered_json report = make_report("subpref", {file, sub_file});
    ordered_json verdict;
    verdict["predicate"] = "sub-preference";
    verdict["agent"] = agent;
    verdict["holds"] = !w.has_value();
    if (w) {
        ordered_json witness;
        witness["kind"] = w->kind == SubprefBreach::AcceptabilityBreach
                              ? "acceptability-breach"
                              : "blocking-breach";
        witness["menu"] = ids_json(sup.market, w->menu);
        if (w->contract) witness["contract"] = sup.market.contracts()[*w->contract].id;
        verdict["witness"] = witness;
    }
    report["verdicts"].push_back(verdict);
    emit(ctx, out, report);
    return w ? 1 : 0;
}

int cmd_minimal(const Ctx& ctx, std::ostream& out, const std::string& file,
                const std::string& sub_file, const std::string& agent) {
    Instance sup = load(file);
    ordered_json report = make_report("minimal", {file});
    if (!sub_file.empty()) {
        report["inputs"].push_back(sub_file);
        Instance sub = load(sub_file);
        PreferenceRelation sub_rel = remap(sup.market, sub.market, relation(sub, agent));
        bool holds = is_minimal(sup.market, sub_rel, relation(sup, agent), ctx.guards);
        report["verdicts"].push_back(
            {{"predicate", "minimal-sub-preference"}, {"agent", agent}, {"holds", holds}});
        emit(ctx, out, report);
        return holds ? 0 : 1;
    }
    auto minis = minimal_subpreferences(sup.market, relation(sup, agent), ctx.guards);
    ordered_json chains = ordered_json::array();
    for (const auto& p : minis) chains.push_back(chain_json(sup.market, p.chain));
    report["verdicts"].push_back({{"predicate", "minimal-sub-preferences"},
                                  {"agent", agent},
                                  {"count", minis.size()},
                                  {"chains", chains}});
    emit(ctx, out, report);
    return 0;
}

int cmd_classify(const Ctx& ctx, std::ostream& out, const std::string& file,
                 const std::string& agent) {
    Instance inst = load(file);
    auto c = classify(inst.market, relation(inst, agent), ctx.guards);
    ordered_json report = make_report("classify", {file});
    auto push = [&](const std::string& name, bool holds) {
        report["verdicts"].push_back({{"predicate", name}, {"agent", agent}, {"holds", holds}});
    };
    push("substitutable", c.substitutable);
    push("pseudo-substitutable", c.pseudo_substitutable);
    push("bilaterally-substitutable", c.bilaterally_substitutable);
    ordered_json completion;
    completion["predicate"] = "substitutably-completable";
    completion["agent"] = agent;
    completion["holds"] = c.substitutably_completable;
    if (c.completion_witness)
        completion["completion"] = chain_json(inst.market, *c.completion_witness);
    report["verdicts"].push_back(completion);
    emit(ctx, out, report);
    return 0;
}

int cmd_stable(const Ctx& ctx, std::ostream& out, const std::string& file, bool corewise) {
    Instance inst = load(file);
    auto stable = stable_set(inst.market, inst.profile, ctx.guards);
    ordered_json report = make_report("stable", {file});
    ordered_json allocations = ordered_json::array();
    for (Cset y : stable) allocations.push_back(ids_json(inst.market, y));
    report["verdicts"].push_back({{"predicate", "pairwise-stable-nonempty"},
                                  {"holds", !stable.empty()},
                                  {"allocations", allocations}});
    if (corewise) {
        ordered_json core = ordered_json::array();
        for (Cset y : enumerate_allocations(inst.market, ctx.guards))
            if (is_corewise_stable(inst.market, inst.profile, y, ctx.guards).first)
                core.push_back(ids_json(inst.market, y));
        report["verdicts"].push_back(
            {{"predicate", "corewise-stable-allocations"}, {"allocations", core}});
    }
    emit(ctx, out, report);
    return stable.empty() ? 1 : 0;
}

int cmd_inclusion(const Ctx& ctx, std::ostream& out, const std::string& file,
                  const std::string& sub_file) {
    Instance sup = load(file);
    Instance sub = load(sub_file);
    PreferenceProfile subprofile;
    for (const auto& [agent, rel] : sub.profile.by_agent)
        subprofile.by_agent[agent] = remap(sup.market, sub.market, rel);
    for (const auto& a : sup.market.agents())
        if (!subprofile.by_agent.count(a))
            throw UsageError("sub profile misses agent: " + a);
    bool holds = verify_inclusion(sup.market, subprofile, sup.profile, ctx.guards);
    ordered_json report = make_report("inclusion", {file, sub_file});
    report["verdicts"].push_back({{"predicate", "stable-set-inclusion"}, {"holds", holds}});
    emit(ctx, out, report);
    return holds ? 0 : 1;
}

int cmd_counterexample(const Ctx& ctx, std::ostream& out, const std::string& file,
                       const std::string& agent, const std::string& out_file) {
    Instance inst = load(file);
    const auto& pref = relation(inst, agent);
    auto w = find_unidirectional_witness(inst.market, pref, ctx.guards);
    ordered_json report = make_report("counterexample", {file});
    if (!w) {
        report["verdicts"].push_back({{"predicate", "non-pseudo-substitutable"},
                                      {"agent", agent},
                                      {"holds", false}});
        emit(ctx, out, report);
        return 1;
    }
    auto cm = build_counterexample(inst.market, pref, *w, ctx.guards);
    Cset gadget_mask = 0;
    for (int x : w->gadget) gadget_mask |= Cset{1} << x;
    bool empty_stable = verify_empty_stable(cm, ctx.guards);
    bool claim = verify_claim1(inst.market, w->minimal_sub, w->base & ~gadget_mask);
    ordered_json pairs = ordered_json::array();
    for (const auto& [support, dependent] : w->pairs)
        pairs.push_back({{"support", inst.market.contracts()[support].id},
                         {"dependent", inst.market.contracts()[dependent].id}});
    ordered_json verdict;
    verdict["predicate"] = "empty-stable-set";
    verdict["agent"] = agent;
    verdict["holds"] = empty_stable;
    verdict["case"] = to_string(cm.overlap);
    verdict["minimal_sub"] = chain_json(inst.market, w->minimal_sub.chain);
    verdict["base"] = ids_json(inst.market, w->base);
    verdict["pairs"] = pairs;
    verdict["rival"] = cm.rival;
    verdict["added_contracts"] = cm.added_contracts;
    report["verdicts"].push_back(verdict);
    report["verdicts"].push_back(
        {{"predicate", "remainder-always-chosen"}, {"holds", claim}});
    ordered_json table = ordered_json::array();
    for (const auto& row : blocking_analysis(cm, ctx.guards)) {
        ordered_json blockers = ordered_json::array();
        for (int b : row.blockers)
            blockers.push_back(cm.instance.market.contracts()[b].id);
        table.push_back({{"allocation", ids_json(cm.instance.market, row.allocation)},
                         {"blockers", blockers}});
    }
    report["verdicts"].push_back(
        {{"predicate", "blocking-table"}, {"rows", table}});
    emit(ctx, out, report);
    if (!out_file.empty()) write_instance_file(cm.instance, out_file);
    return empty_stable ? 0 : 1;
}

int cmd_claim1(const Ctx& ctx, std::ostream& out, const std::string& file,
               const std::string& agent) {
    Instance inst = load(file);
    const auto& pref = relation(inst, agent);
    auto w = find_unidirectional_witness(inst.market, pref, ctx.guards);
    if (!w)
        throw UsageError("agent " + agent +
                         " is pseudo-substitutable; no witness to check");
    Cset gadget_mask = 0;
    for (int x : w->gadget) gadget_mask |= Cset{1} << x;
    Cset remainder = w->base & ~gadget_mask;
    bool holds = verify_claim1(inst.market, w->minimal_sub, remainder);
    ordered_json report = make_report("claim1", {file});
    report["verdicts"].push_back({{"predicate", "remainder-always-chosen"},
                                  {"agent", agent},
                                  {"holds", holds},
                                  {"remainder", ids_json(inst.market, remainder)}});
    emit(ctx, out, report);
    return holds ? 0 : 1;
}

int cmd_gen(const Ctx& ctx, std::ostream& out, const std::string& out_file,
            GenParams params) {
    params.seed = ctx.seed;
    Instance inst = random_instance(params);
    if (!out_file.empty()) {
        write_instance_file(inst, out_file);
        ordered_json report = make_report("gen", {out_file});
        report["verdicts"].push_back(
            {{"predicate", "generated"}, {"seed", params.seed}});
        emit(ctx, out, report);
    } else {
        out << instance_to_json(inst).dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"matching-with-contracts verification toolkit"};
    app.require_subcommand(1);

    Ctx ctx;
    int guard_contracts = -1;
    app.add_option("--guard-contracts", guard_contracts,
                   "enumeration guard on contract counts");
    app.add_option("--guard-family", ctx.guards.max_family,
                   "guard on acceptable-family size");
    app.add_option("--format", ctx.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", ctx.seed, "generator seed");

    std::string file, sub_file, agent, offer_csv, cert_path, out_file;
    bool corewise = false;
    GenParams gen_params;

    auto* sc_validate = app.add_subcommand("validate", "check a market document");
    sc_validate->add_option("file", file)->required();

    auto* sc_choice = app.add_subcommand("choice", "evaluate a choice function");
    sc_choice->add_option("file", file)->required();
    sc_choice->add_option("--agent", agent)->required();
    sc_choice->add_option("--offer", offer_csv)->required();

    auto* sc_subst = app.add_subcommand("substitutable", "test substitutability");
    sc_subst->add_option("file", file)->required();
    sc_subst->add_option("--agent", agent)->required();

    auto* sc_pseudo = app.add_subcommand("pseudo", "test pseudo-substitutability");
    sc_pseudo->add_option("file", file)->required();
    sc_pseudo->add_option("--agent", agent)->required();
    sc_pseudo->add_option("--certificate", cert_path);

    auto* sc_subpref = app.add_subcommand("subpref", "test the sub-preference relation");
    sc_subpref->add_option("file", file)->required();
    sc_subpref->add_option("--sub", sub_file)->required();
    sc_subpref->add_option("--agent", agent)->required();

    auto* sc_minimal = app.add_subcommand("minimal", "minimal sub-preferences");
    sc_minimal->add_option("file", file)->required();
    sc_minimal->add_option("--agent", agent)->required();
    sc_minimal->add_option("--sub", sub_file);

    auto* sc_classify = app.add_subcommand("classify", "domain classification");
    sc_classify->add_option("file", file)->required();
    sc_classify->add_option("--agent", agent)->required();

    auto* sc_stable = app.add_subcommand("stable", "enumerate stable allocations");
    sc_stable->add_option("file", file)->required();
    sc_stable->add_flag("--corewise", corewise);

    auto* sc_inclusion = app.add_subcommand("inclusion", "stable-set inclusion");
    sc_inclusion->add_option("file", file)->required();
    sc_inclusion->add_option("--sub", sub_file)->required();

    auto* sc_counter = app.add_subcommand("counterexample", "build the empty-stable market");
    sc_counter->add_option("file", file)->required();
    sc_counter->add_option("--agent", agent)->required();
    sc_counter->add_option("-o,--output", out_file);

    auto* sc_claim1 = app.add_subcommand("claim1", "check the remainder-choice claim");
    sc_claim1->add_option("file", file)->required();
    sc_claim1->add_option("--agent", agent)->required();

    auto* sc_gen = app.add_subcommand("gen", "generate a random instance");
    sc_gen->add_option("-o,--output", out_file);
    sc_gen->add_option("--doctors", gen_params.doctors);
    sc_gen->add_option("--hospitals", gen_params.hospitals);
    sc_gen->add_option("--contracts", gen_params.contracts);
    sc_gen->add_option("--chain-max", gen_params.chain_length_max);
    sc_gen->add_option("--bias", gen_params.acceptance_bias);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    if (guard_contracts >= 0) {
        ctx.guards.max_contracts_pairwise = guard_contracts;
        ctx.guards.max_contracts_corewise = guard_contracts;
        ctx.guards.max_agent_contracts = guard_contracts;
        ctx.guards.max_completion_contracts = guard_contracts;
    }

    try {
        if (app.got_subcommand(sc_validate)) return cmd_validate(ctx, out, file);
        if (app.got_subcommand(sc_choice)) return cmd_choice(ctx, out, file, agent, offer_csv);
        if (app.got_subcommand(sc_subst)) return cmd_substitutable(ctx, out, file, agent);
        if (app.got_subcommand(sc_pseudo)) return cmd_pseudo(ctx, out, file, agent, cert_path);
        if (app.got_subcommand(sc_subpref)) return cmd_subpref(ctx, out, file, sub_file, agent);
        if (app.got_subcommand(sc_minimal)) return cmd_minimal(ctx, out, file, sub_file, agent);
        if (app.got_subcommand(sc_classify)) return cmd_classify(ctx, out, file, agent);
        if (app.got_subcommand(sc_stable)) return cmd_stable(ctx, out, file, corewise);
        if (app.got_subcommand(sc_inclusion)) return cmd_inclusion(ctx, out, file, sub_file);
        if (app.got_subcommand(sc_counter))
            return cmd_counterexample(ctx, out, file, agent, out_file);
        if (app.got_subcommand(sc_claim1)) return cmd_claim1(ctx, out, file, agent);
        if (app.got_subcommand(sc_gen)) return cmd_gen(ctx, out, out_file, gen_params);
    } catch (const GuardExceeded& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace psmatch
