#include <doctest.h>

#include "helpers.hpp"
#include "psmatch/choice_analysis.hpp"

using namespace psmatch;
using psmatch::testing::load_fixture;

TEST_CASE("substitutability witnesses are deterministic") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    auto w = substitutability_witness(m, inst.profile.at("h"));
    REQUIRE(w.has_value());
    CHECK(m.set_ids(w->menu) == std::vector<std::string>{"x", "y", "z"});
    CHECK(m.contracts()[w->removed].id == "x");
    CHECK(m.contracts()[w->dropped].id == "y");
    CHECK(!is_substitutable(m, inst.profile.at("h")));
    // every doctor ranks singletons only, hence is substitutable
    for (const auto& d : m.doctors()) CHECK(is_substitutable(m, inst.profile.at(d)));
}

TEST_CASE("removal form and inclusion form agree") {
    for (const auto& name :
         {"example1.json", "ptilde.json", "pathfail.json", "blair.json"}) {
        Instance inst = load_fixture(name);
        for (const auto& a : inst.market.agents())
            CHECK(verify_remark1(inst.market, inst.profile.at(a)));
    }
}

TEST_CASE("a complementary pair breaks path independence") {
    Instance inst = load_fixture("pathfail.json");
    const Market& m = inst.market;
    const auto& p = inst.profile.at("h");
    auto w = path_independence_witness(m, p);
    REQUIRE(w.has_value());
    CHECK(m.set_label(w->first) == "{x}");
    CHECK(m.set_label(w->second) == "{y}");
    CHECK(!is_path_independent(m, p));
    auto sw = substitutability_witness(m, p);
    REQUIRE(sw.has_value());
    CHECK(m.set_label(sw->menu) == "{x,y}");
}

TEST_CASE("preference-induced choice is always consistent") {
    for (const auto& name : {"example1.json", "ptilde.json", "nonbinding.json"}) {
        Instance inst = load_fixture(name);
        for (const auto& a : inst.market.agents())
            CHECK(verify_consistency(inst.market, inst.profile.at(a)));
    }
}

TEST_CASE("Blair order on the four-contract fixture") {
    Instance inst = load_fixture("blair.json");
    const Market& m = inst.market;
    const auto& p = inst.profile.at("h");
    Cset xy = m.set_from_ids({"x", "y"});
    Cset xw = m.set_from_ids({"w", "x"});
    Cset yw = m.set_from_ids({"w", "y"});
    CHECK(blair_compare(m, p, xy, xw) == BlairVerdict::Incomparable);
    CHECK(blair_compare(m, p, xy, yw) == BlairVerdict::Incomparable);
    CHECK(blair_compare(m, p, xw, yw) == BlairVerdict::Incomparable);
    CHECK(blair_compare(m, p, xy, xy) == BlairVerdict::Equal);
    Cset wxy = m.set_from_ids({"w", "x", "y"});
    CHECK(blair_compare(m, p, wxy, xy) == BlairVerdict::FirstPreferred);
    CHECK(blair_compare(m, p, xy, wxy) == BlairVerdict::SecondPreferred);
}

TEST_CASE("Blair comparison rejects infeasible sets") {
    Instance inst = load_fixture("completion_a.json");
    const Market& m = inst.market;
    const auto& p = inst.profile.at("h");
    Cset xz = m.set_from_ids({"x", "z"});  // both signed by d1
    Cset xy = m.set_from_ids({"x", "y"});
    CHECK_THROWS_AS(blair_compare(m, p, xz, xy), std::invalid_argument);
}

TEST_CASE("complementarity report finds the dependent pair") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    auto report = complementarity_report(m, inst.profile.at("h"));
    REQUIRE(report.size() == 1);
    CHECK(m.set_label(report[0].base) == "{x,y,z}");
    CHECK(report[0].kind == ComplementarityKind::BiComplementary);
    CHECK(m.contracts()[report[0].dependent].id == "x");
    CHECK(m.contracts()[report[0].support].id == "y");
}

TEST_CASE("an empty complementarity report does not imply substitutability") {
    // the failure can live on a menu that is not an acceptable base
    Instance inst = load_fixture("ptilde.json");
    const Market& m = inst.market;
    const auto& p = inst.profile.at("h");
    CHECK(complementarity_report(m, p).empty());
    CHECK(!is_substitutable(m, p));
}

TEST_CASE("acceptable sets are the fixed points of choice") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    auto acc = acceptable_sets(m, inst.profile.at("h"));
    std::vector<std::string> labels;
    for (Cset s : acc) labels.push_back(m.set_label(s));
    CHECK(labels == std::vector<std::string>{"{}", "{x}", "{x,y}", "{x,y,z}", "{y}",
                                             "{z}"});
}
