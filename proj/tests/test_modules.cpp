#include <doctest.h>

#include <algorithm>

#include "clm/abelian.hpp"
#include "clm/bernoulli.hpp"
#include "clm/module_oracle.hpp"
#include "clm/modules.hpp"

using namespace clm;

TEST_CASE("partitions") {
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(10).size() == 42);
    CHECK(merge(Partition{2, 1}, Partition{3, 1}) == Partition{3, 2, 1, 1});
    CHECK(Partition{3, 1}.size() == 4);
    CHECK_THROWS(Partition(std::vector<unsigned>{1, 2}));
}

TEST_CASE("hom counts") {
    for (int q : {2, 3, 9}) CHECK(hom_count(Partition{2}, Partition{1}, Int(q)) == q);
    CHECK(hom_count(Partition{2, 1}, Partition{1, 1}, 2) == 16);
    CHECK(hom_count(Partition{}, Partition{3, 2}, 5) == 1);
    CHECK_THROWS(hom_count(Partition{1}, Partition{1}, 1));
}

TEST_CASE("automorphism counts") {
    for (int q : {2, 3, 4, 7}) CHECK(aut_count(Partition{1}, Int(q)) == q - 1);
    CHECK(aut_count(Partition{1, 1}, 2) == 6);
    CHECK(aut_count(Partition{2}, 3) == 6);
    CHECK(aut_count(Partition{1, 1, 1}, 2) == 168);
    CHECK_THROWS(aut_count(Partition{1}, 0));
}

TEST_CASE("surjection counts") {
    for (int q : {2, 5}) CHECK(sur_count(Partition{1}, Int(q), 1) == q - 1);
    CHECK(sur_count(Partition{1, 1}, 2, 2) == 6);
    CHECK(sur_count(Partition{1}, 2, 0) == 0);
    CHECK(sur_count(Partition{}, 7, 0) == 1);
    CHECK(sur_count(Partition{1}, 3, 2) == 8);
    // sur(lambda, u) = aut(lambda) when u equals the length and lambda is elementary
    CHECK(sur_count(Partition{1, 1, 1}, 3, 3) == aut_count(Partition{1, 1, 1}, 3));
}

TEST_CASE("brute-force oracle") {
    CHECK(oracle::brute_hom(Partition{2, 1}, Partition{1, 1}, 2) == 16);
    CHECK(oracle::brute_aut(Partition{1, 1, 1}, 2) == 168);
    CHECK(oracle::brute_sur(Partition{1}, 3, 2) == 8);
    CHECK(oracle::brute_force_counts(Partition{2, 1}, Partition{1, 1}, 2, oracle::Mode::hom, 0) == 16);
    CHECK_THROWS(oracle::brute_aut(Partition{13}, 2));

    // p = 5 sweep over all shapes of order <= 5^3
    std::vector<Partition> shapes;
    for (unsigned n = 0; n <= 3; ++n)
        for (auto& l : partitions_of(n)) shapes.push_back(l);
    for (const auto& a : shapes) {
        CHECK(oracle::brute_aut(a, 5) == aut_count(a, 5));
        for (unsigned u = 0; u <= 2; ++u) CHECK(oracle::brute_sur(a, 5, u) == sur_count(a, 5, u));
        for (const auto& b : shapes) CHECK(oracle::brute_hom(a, b, 5) == hom_count(a, b, 5));
    }
}

TEST_CASE("index and classes") {
    const GroupSpec g = build_group({4});
    const auto comps = components(g);
    const auto four = *std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.n == 4; });
    const auto ideals = maximal_ideals(four, {5, 13}, 4);
    REQUIRE(ideals.size() == 4);

    ModuleShape m0;
    m0.torsion[ideals[0]] = Partition{1};
    const std::map<int, unsigned> ranks{{four.id, 2}};
    CHECK(ia_index(m0, m0, ranks) == 1);
    CHECK(ia_index(ModuleShape{}, m0, ranks) == Rational(25 * 4));
    CHECK(ia_index(ModuleShape{}, m0, {}) == Rational(4));

    ClassDatum datum;
    datum.group = build_group({3});
    for (std::size_t i = 0; i < ideals.size(); ++i) datum.ideal_class[ideals[i].id()] = {i % 3};
    CHECK(class_of(ModuleShape{}, datum).total == GroupElement{0});
    ModuleShape two;
    two.torsion[ideals[1]] = Partition{2};
    CHECK(class_of(two, datum).total == GroupElement{2});
    ModuleShape pair;
    pair.torsion[ideals[1]] = Partition{1};
    pair.torsion[ideals[2]] = Partition{1};
    CHECK(class_of(pair, datum).total == GroupElement{0});
    ModuleShape missing;
    missing.torsion[maximal_ideals(four, {17}, 4)[0]] = Partition{1};
    CHECK_THROWS(class_of(missing, datum));

    const ModuleShape sum = direct_sum(two, pair);
    CHECK(sum.torsion.at(ideals[1]) == Partition{2, 1});
    CHECK(parse_module_shape(dump_module_shape(sum), ideals) == sum);
}

TEST_CASE("class of mu on the minus part") {
    const GroupSpec g = build_group({2});
    const auto comps = components(g);
    const auto minus = *std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.n == 2; });
    const auto at3 = maximal_ideals(minus, {3}, 2);
    ClassDatum trivial;
    trivial.group = build_group({1});
    trivial.ideal_class[at3[0].id()] = {0};
    CHECK(mu_minus_class({}, trivial, 2).total == GroupElement{0});
    CHECK(mu_minus_class({{3, at3[0], 2}}, trivial, 2).total == GroupElement{0});

    ClassDatum nontrivial;
    nontrivial.group = build_group({5});
    nontrivial.ideal_class[at3[0].id()] = {2};
    CHECK(mu_minus_class({{3, at3[0], 2}}, nontrivial, 2).total == GroupElement{2});
    CHECK_THROWS(mu_minus_class({{3, at3[0], 4}}, nontrivial, 2));
    CHECK_THROWS(mu_minus_class({{3, at3[0], 2}, {3, at3[0], 2}}, nontrivial, 2));
}
