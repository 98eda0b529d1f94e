#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "psmatch/stability.hpp"
#include "psmatch/subpref.hpp"

using namespace psmatch;
using psmatch::testing::load_fixture;

namespace {

std::vector<std::vector<std::string>> id_sets(const Market& m,
                                              const std::vector<Cset>& sets) {
    std::vector<std::vector<std::string>> out;
    for (Cset s : sets) out.push_back(m.set_ids(s));
    return out;
}

}  // namespace

TEST_CASE("allocations are the agentwise-feasible contract sets") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    auto all = enumerate_allocations(m);
    CHECK(all.size() == 8);  // x, y, z have three distinct doctors
    for (Cset y : all) CHECK(is_allocation(m, y));
    Instance comp = load_fixture("completion_a.json");
    CHECK(!is_allocation(comp.market, comp.market.set_from_ids({"x", "z"})));
}

TEST_CASE("stable sets of the profile and its sub-profile") {
    Instance sup = load_fixture("example2_P.json");
    auto stable = stable_set(sup.market, sup.profile);
    CHECK(id_sets(sup.market, stable) ==
          std::vector<std::vector<std::string>>{{"x", "y", "z"}, {"z"}});

    Instance sub = load_fixture("example2_Ppp.json");
    auto stable_sub = stable_set(sub.market, sub.profile);
    CHECK(id_sets(sub.market, stable_sub) ==
          std::vector<std::vector<std::string>>{{"z"}});
}

TEST_CASE("individual rationality and blocking decompose stability") {
    Instance inst = load_fixture("example2_P.json");
    const Market& m = inst.market;
    Cset xy = m.set_from_ids({"x", "y"});
    auto [ir, offender] = is_individually_rational(m, inst.profile, xy);
    CHECK(ir);
    auto blockers = blocking_contracts(m, inst.profile, xy);
    REQUIRE(blockers.size() == 1);
    CHECK(m.contracts()[blockers[0]].id == "z");
    CHECK(!is_pairwise_stable(m, inst.profile, xy));

    Cset xyz = m.set_from_ids({"x", "y", "z"});
    CHECK(blocking_contracts(m, inst.profile, xyz).empty());
    CHECK(is_pairwise_stable(m, inst.profile, xyz));
}

TEST_CASE("an unacceptable holding breaks individual rationality") {
    Instance inst = load_fixture("example2_Ppp.json");
    const Market& m = inst.market;
    // {x,y,z} is not individually rational for h under the shrunk relation
    auto [ir, offender] = is_individually_rational(m, inst.profile,
                                                   m.set_from_ids({"x", "y", "z"}));
    CHECK(!ir);
    REQUIRE(offender.has_value());
    CHECK(*offender == "h");
}

TEST_CASE("corewise stability on the non-binding-inclusion fixture") {
    Instance inst = load_fixture("nonbinding.json");
    const Market& m = inst.market;
    auto stable = stable_set(m, inst.profile);
    CHECK(id_sets(m, stable) ==
          std::vector<std::vector<std::string>>{{"w", "z"}, {"x", "y"}});
    std::vector<Cset> core;
    for (Cset y : enumerate_allocations(m))
        if (is_corewise_stable(m, inst.profile, y).first) core.push_back(y);
    REQUIRE(core.size() == 1);
    CHECK(m.set_ids(core[0]) == std::vector<std::string>{"w", "z"});
    // {x,y} is pairwise stable yet deviated upon by the grand coalition
    auto [cw, deviation] = is_corewise_stable(m, inst.profile,
                                              m.set_from_ids({"x", "y"}));
    CHECK(!cw);
    REQUIRE(deviation.has_value());
    CHECK(m.set_ids(*deviation) == std::vector<std::string>{"w", "z"});
}

TEST_CASE("stable-set inclusion under agentwise sub-preferences") {
    Instance sup = load_fixture("example2_P.json");
    Instance sub = load_fixture("example2_Ppp.json");
    PreferenceProfile subprofile;
    for (const auto& [agent, rel] : sub.profile.by_agent) {
        PreferenceRelation r{agent, {}};
        for (Cset e : rel.chain)
            r.chain.push_back(sup.market.set_from_ids(sub.market.set_ids(e)));
        subprofile.by_agent[agent] = r;
    }
    CHECK(verify_inclusion(sup.market, subprofile, sup.profile));
}

TEST_CASE("stability reports carry the full verdict") {
    Instance inst = load_fixture("nonbinding.json");
    const Market& m = inst.market;
    auto report = stability_report(m, inst.profile, m.set_from_ids({"x", "y"}), true);
    CHECK(report.individually_rational);
    CHECK(report.blockers.empty());
    CHECK(report.pairwise_stable);
    CHECK(!report.corewise_stable);
}

TEST_CASE("enumeration guards bound the stability procedures") {
    Instance inst = load_fixture("nonbinding.json");
    Guards g;
    g.max_contracts_pairwise = 2;
    CHECK_THROWS_AS(stable_set(inst.market, inst.profile, g), GuardExceeded);
    g = Guards{};
    g.max_contracts_corewise = 2;
    CHECK_THROWS_AS(is_corewise_stable(inst.market, inst.profile, 0, g),
                    GuardExceeded);
}
