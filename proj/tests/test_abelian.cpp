#include <doctest.h>

#include <algorithm>
#include <set>

#include "clm/abelian.hpp"

using namespace clm;

namespace {

std::multiset<std::pair<std::uint64_t, std::uint64_t>> shape(const std::vector<GroupComponent>& comps) {
    std::multiset<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& c : comps) out.insert({c.n, c.degree});
    return out;
}

}  // namespace

TEST_CASE("build_group") {
    CHECK(build_group({4}).order == 4);
    CHECK(build_group({2, 4}).order == 8);
    CHECK(build_group({58}).order == 58);
    CHECK_THROWS(build_group({}));
    CHECK_THROWS(build_group({2, 0}));
    CHECK(group_elements(build_group({2, 4})).size() == 8);
}

TEST_CASE("rational components") {
    CHECK(shape(components(build_group({4}))) ==
          std::multiset<std::pair<std::uint64_t, std::uint64_t>>{{1, 1}, {2, 1}, {4, 2}});
    CHECK(components(build_group({1})).size() == 1);
    CHECK(shape(components(build_group({58}))) ==
          std::multiset<std::pair<std::uint64_t, std::uint64_t>>{{1, 1}, {2, 1}, {29, 28}, {58, 28}});
    // degrees always sum to #G
    for (const auto& orders : std::vector<std::vector<std::uint64_t>>{{6}, {2, 2}, {2, 6}, {3, 9}, {12}}) {
        const GroupSpec g = build_group(orders);
        std::uint64_t total = 0;
        for (const auto& c : components(g)) total += c.degree;
        CHECK(total == g.order);
    }
}

TEST_CASE("minus components") {
    const GroupSpec c2 = build_group({2});
    CHECK(shape(minus_components(c2, cyclic_involution(c2))) ==
          std::multiset<std::pair<std::uint64_t, std::uint64_t>>{{2, 1}});
    const GroupSpec c4 = build_group({4});
    CHECK(cyclic_involution(c4) == GroupElement{2});
    CHECK(shape(minus_components(c4, cyclic_involution(c4))) ==
          std::multiset<std::pair<std::uint64_t, std::uint64_t>>{{4, 2}});
    const GroupSpec c58 = build_group({58});
    auto minus = minus_components(c58, cyclic_involution(c58));
    std::set<std::uint64_t> ns;
    for (const auto& c : minus) ns.insert(c.n);
    CHECK(ns == std::set<std::uint64_t>{2, 58});
    CHECK_THROWS(minus_components(c4, GroupElement{1}));
}

TEST_CASE("maximal ideals") {
    const GroupSpec c4 = build_group({4});
    const auto comps = components(c4);
    const auto four = *std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.n == 4; });
    auto ideals = maximal_ideals(four, {3}, 4);
    REQUIRE(ideals.size() == 1);
    CHECK(ideals[0].residue_degree == 2);
    CHECK(ideals[0].norm == 9);
    ideals = maximal_ideals(four, {5}, 4);
    CHECK(ideals.size() == 2);
    CHECK(ideals[0].norm == 5);

    const auto one = *std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.n == 1; });
    ideals = maximal_ideals(one, {7}, 4);
    REQUIRE(ideals.size() == 1);
    CHECK(ideals[0].norm == 7);
    CHECK_THROWS(maximal_ideals(four, {2}, 4));

    const GroupSpec c5 = build_group({5});
    const auto c5comps = components(c5);
    const auto five = *std::find_if(c5comps.begin(), c5comps.end(), [](const auto& c) { return c.n == 5; });
    ideals = maximal_ideals(five, {3}, 5);
    REQUIRE(ideals.size() == 1);
    CHECK(ideals[0].residue_degree == 4);
    CHECK(ideals[0].norm == 81);
}

TEST_CASE("group documents") {
    const GroupDocument doc = parse_group_shorthand("C58minus");
    CHECK(doc.group.order == 58);
    CHECK(doc.involution.has_value());
    const GroupDocument back = parse_group_document(dump_group_document(doc));
    CHECK(back.group.cyclic_orders == doc.group.cyclic_orders);
    CHECK(back.involution == doc.involution);
    CHECK(parse_group_shorthand("C2xC4").group.order == 8);
    CHECK_THROWS(parse_group_shorthand("C2xC4minus"));
    CHECK_THROWS(parse_group_shorthand("D4"));
    CHECK_THROWS(parse_group_shorthand("C"));
}
