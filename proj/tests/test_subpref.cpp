#include <doctest.h>

#include "helpers.hpp"
#include "psmatch/subpref.hpp"

using namespace psmatch;
using psmatch::testing::load_fixture;

namespace {

// translate a relation across market objects via contract ids
PreferenceRelation remap(const Market& to, const Market& from, const PreferenceRelation& p) {
    PreferenceRelation out{p.agent, {}};
    for (Cset e : p.chain) out.chain.push_back(to.set_from_ids(from.set_ids(e)));
    return out;
}

std::vector<std::string> labels(const Market& m, const std::vector<Cset>& chain) {
    std::vector<std::string> out;
    for (Cset e : chain) out.push_back(m.set_label(e));
    return out;
}

}  // namespace

TEST_CASE("sub-preference verdicts on the three candidate relations") {
    Instance sup = load_fixture("example1.json");
    const Market& m = sup.market;
    const auto& ph = sup.profile.at("h");

    auto sub1 = remap(m, load_fixture("example1_sub1.json").market,
                      load_fixture("example1_sub1.json").profile.at("h"));
    CHECK(is_subpreference(m, sub1, ph));

    auto sub2 = remap(m, load_fixture("example1_sub2.json").market,
                      load_fixture("example1_sub2.json").profile.at("h"));
    CHECK(is_subpreference(m, sub2, ph));

    auto tilde = remap(m, load_fixture("ptilde.json").market,
                       load_fixture("ptilde.json").profile.at("h"));
    auto w = subpreference_witness(m, tilde, ph);
    REQUIRE(w.has_value());
    CHECK(w->kind == SubprefBreach::BlockingBreach);
    CHECK(m.set_label(w->menu) == "{x,y}");
    REQUIRE(w->contract.has_value());
    CHECK(m.contracts()[*w->contract].id == "z");
}

TEST_CASE("sub-preference comparison requires one agent") {
    Instance inst = load_fixture("example1.json");
    PreferenceRelation other{"d1", {0}};
    CHECK_THROWS_AS(subpreference_witness(inst.market, other, inst.profile.at("h")),
                    std::invalid_argument);
}

TEST_CASE("canonicalization drops shadowed entries only") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    Cset x = m.set_from_ids({"x"});
    Cset xy = m.set_from_ids({"x", "y"});
    PreferenceRelation p{"h", {x, xy, 0}};  // {x,y} ranked below its subset {x}
    auto canon = canonicalize(m, p);
    CHECK(canon.chain == std::vector<Cset>{x, 0});
    CHECK(canonicalize(m, inst.profile.at("h")).chain == inst.profile.at("h").chain);
}

TEST_CASE("minimal sub-preferences of the worked example") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    auto minis = minimal_subpreferences(m, inst.profile.at("h"));
    REQUIRE(minis.size() == 2);
    CHECK(labels(m, minis[0].chain) ==
          std::vector<std::string>{"{z}", "{x,y}", "{x}", "{y}", "{}"});
    CHECK(labels(m, minis[1].chain) ==
          std::vector<std::string>{"{z}", "{x,y}", "{y}", "{x}", "{}"});
    for (const auto& p : minis) CHECK(is_minimal(m, p, inst.profile.at("h")));
    // the full relation is a sub-preference of itself but not minimal
    CHECK(!is_minimal(m, canonicalize(m, inst.profile.at("h")), inst.profile.at("h")));
    PreferenceRelation stranger{"h", {m.set_from_ids({"z"}), 0}};
    CHECK_THROWS_AS(is_minimal(m, stranger, inst.profile.at("h")),
                    std::invalid_argument);
}

TEST_CASE("pseudo-substitutability oracle and certificate") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    auto verdict = is_pseudo_substitutable(m, inst.profile.at("h"));
    CHECK(verdict.holds);
    REQUIRE(verdict.certificate.has_value());
    CHECK(labels(m, verdict.certificate->chain) ==
          std::vector<std::string>{"{z}", "{x,y}", "{x}", "{y}", "{}"});
    CHECK(is_subpreference(m, *verdict.certificate, inst.profile.at("h")));
    CHECK(is_substitutable(m, *verdict.certificate));
}

TEST_CASE("a refuted relation reports its minimal sub-preferences") {
    Instance inst = load_fixture("pair_complement.json");
    const Market& m = inst.market;
    auto verdict = is_pseudo_substitutable(m, inst.profile.at("h"));
    CHECK(!verdict.holds);
    REQUIRE(verdict.refutation.size() == 1);
    const auto& [mini, oneway] = verdict.refutation[0];
    CHECK(labels(m, mini.chain) == std::vector<std::string>{"{x,y}", "{x}", "{}"});
    REQUIRE(oneway.has_value());
    CHECK(m.contracts()[oneway->support].id == "x");
    CHECK(m.contracts()[oneway->dependent].id == "y");
}

TEST_CASE("fast path agrees with the enumeration oracle on fixtures") {
    for (const auto& name : {"example1.json", "ptilde.json", "pair_complement.json",
                             "completion_a.json", "completion_b.json", "blair.json",
                             "nonbinding.json"}) {
        Instance inst = load_fixture(name);
        const Market& m = inst.market;
        for (const auto& a : m.agents()) {
            const auto& p = inst.profile.at(a);
            auto oracle = find_substitutable_subpreference(m, p);
            auto fast = fast_pseudo_certificate(m, p);
            CHECK(oracle.has_value() == fast.has_value());
            if (fast) {
                CHECK(is_subpreference(m, *fast, p));
                CHECK(is_substitutable(m, *fast));
            }
        }
    }
}

TEST_CASE("the sub-preference relation is transitive on a concrete chain") {
    Instance inst = load_fixture("example1.json");
    const Market& m = inst.market;
    const auto& p1 = inst.profile.at("h");
    auto p2 = remap(m, load_fixture("example1_sub1.json").market,
                    load_fixture("example1_sub1.json").profile.at("h"));
    auto p3 = remap(m, load_fixture("example1_sub2.json").market,
                    load_fixture("example1_sub2.json").profile.at("h"));
    CHECK(verify_transitivity(m, p3, p2, p1));
    CHECK_THROWS_AS(verify_transitivity(m, p1, p3, p2), std::invalid_argument);
}

TEST_CASE("substitutable certificates share family, order, and minimality") {
    for (const auto& name : {"example1.json", "blair.json"}) {
        Instance inst = load_fixture(name);
        CHECK(verify_shared_structure(inst.market, inst.profile.at("h")));
    }
}

TEST_CASE("family guard halts oversized enumerations") {
    Instance inst = load_fixture("blair.json");
    Guards g;
    g.max_family = 3;  // the fixture's acceptable family has 10 sets
    CHECK_THROWS_AS(enumerate_canonical_subpreferences(inst.market,
                                                       inst.profile.at("h"), g),
                    GuardExceeded);
}
