#include <doctest.h>

#include "helpers.hpp"
#include "psmatch/domains.hpp"

using namespace psmatch;
using psmatch::testing::load_fixture;

namespace {

std::vector<std::string> labels(const Market& m, const std::vector<Cset>& chain) {
    std::vector<std::string> out;
    for (Cset e : chain) out.push_back(m.set_label(e));
    return out;
}

}  // namespace

TEST_CASE("bilateral but not pseudo-substitutable") {
    Instance inst = load_fixture("bilateral_a.json");
    auto c = classify(inst.market, inst.profile.at("h"));
    CHECK(c.bilaterally_substitutable);
    CHECK(!c.pseudo_substitutable);
    CHECK(!c.substitutable);
}

TEST_CASE("pseudo-substitutable but not bilateral, not completable") {
    Instance inst = load_fixture("bilateral_b.json");
    const Market& m = inst.market;
    auto c = classify(m, inst.profile.at("h"));
    CHECK(c.pseudo_substitutable);
    CHECK(!c.bilaterally_substitutable);
    CHECK(!c.substitutably_completable);
    auto w = bilateral_witness(m, inst.profile.at("h"));
    REQUIRE(w.has_value());
    CHECK(w->menu == 0);
    // z's arrival makes x chosen although neither doctor is in the menu
    auto ids = std::pair(m.contracts()[w->newcomer].id, m.contracts()[w->revived].id);
    CHECK(((ids == std::pair<std::string, std::string>{"x", "z"}) ||
           (ids == std::pair<std::string, std::string>{"z", "x"})));
}

TEST_CASE("completable and pseudo-substitutable, not substitutable") {
    Instance inst = load_fixture("completion_a.json");
    const Market& m = inst.market;
    auto c = classify(m, inst.profile.at("h"));
    CHECK(c.substitutably_completable);
    CHECK(c.pseudo_substitutable);
    CHECK(!c.substitutable);
    REQUIRE(c.completion_witness.has_value());
    CHECK(labels(m, *c.completion_witness) ==
          std::vector<std::string>{"{x,z}", "{x,y}", "{z}", "{y}", "{x}", "{}"});
}

TEST_CASE("completable but not pseudo-substitutable") {
    Instance inst = load_fixture("completion_b.json");
    const Market& m = inst.market;
    auto c = classify(m, inst.profile.at("h"));
    CHECK(c.substitutably_completable);
    CHECK(!c.pseudo_substitutable);
    REQUIRE(c.completion_witness.has_value());
    CHECK(labels(m, *c.completion_witness) ==
          std::vector<std::string>{"{x,y}", "{y}", "{x,z}", "{z}", "{x}", "{}"});
}

TEST_CASE("completions preserve order and acceptability on feasible sets") {
    Instance inst = load_fixture("completion_a.json");
    const Market& m = inst.market;
    const auto& p = inst.profile.at("h");
    auto completion = substitutable_completion(m, p);
    REQUIRE(completion.has_value());
    // relative order of the original chain is intact
    size_t pos = 0;
    for (Cset e : p.chain) {
        auto it = std::find(completion->begin() + pos, completion->end(), e);
        REQUIRE(it != completion->end());
        pos = static_cast<size_t>(it - completion->begin());
    }
    // the completion's choice is substitutable even over infeasible menus
    Cset xa = m.agent_contracts("h");
    for (Cset menu : m.submasks_sorted(xa)) {
        Cset chosen = choice_chain(m, "h", *completion, menu);
        for (int r : m.members_lex(menu)) {
            Cset kept = choice_chain(m, "h", *completion, menu & ~(Cset{1} << r));
            CHECK((chosen & ~(Cset{1} << r) & ~kept) == 0);
        }
    }
}

TEST_CASE("a substitutable relation is in every comparison domain") {
    Instance inst = load_fixture("example1_sub2.json");
    auto c = classify(inst.market, inst.profile.at("h"));
    CHECK(c.substitutable);
    CHECK(c.pseudo_substitutable);
    CHECK(c.bilaterally_substitutable);
    CHECK(c.substitutably_completable);
}

TEST_CASE("completion guard bounds the search") {
    Instance inst = load_fixture("blair.json");
    Guards g;
    g.max_completion_contracts = 3;  // the fixture has four contracts at h
    CHECK_THROWS_AS(substitutable_completion(inst.market, inst.profile.at("h"), g),
                    GuardExceeded);
}
