#include <doctest.h>

#include <cmath>

#include "clm/quadforms.hpp"
#include "clm/quartic.hpp"

using namespace clm;

TEST_CASE("discriminant decomposition") {
    const auto d = decompose_quartic_disc(125);
    REQUIRE(d.has_value());
    CHECK(d->alpha == 0);
    CHECK(d->d_prime == 5);
    CHECK(d->a == 1);
    CHECK(h_of_disc(*d) == 1);
    CHECK(h_of_disc(*decompose_quartic_disc(2048 * 125)) == 4);
    CHECK(h_of_disc(*decompose_quartic_disc(64 * 125)) == 2);
    CHECK_FALSE(decompose_quartic_disc(124).has_value());
    CHECK(decompose_quartic_disc(16 * 125).has_value());
    CHECK_FALSE(decompose_quartic_disc(32 * 125).has_value());
    CHECK_FALSE(decompose_quartic_disc(8 * 125).has_value());
    CHECK_THROWS(h_of_disc(QuarticDisc{0, 3, 1}));
}

TEST_CASE("field counts") {
    CHECK(count_fields(124) == 0);
    CHECK(count_fields(125) == 1);
    // brute force over n against the closed count
    std::uint64_t total = 0;
    for (std::uint64_t n = 1; n <= 2'000'000; ++n)
        if (auto d = decompose_quartic_disc(n)) total += h_of_disc(*d);
    CHECK(count_fields(2'000'000) == total);
    CHECK(count_fields(1'000'000'000, 12) == 0);
    CHECK(count_fields(1'000'000'000, -4) == 0);
    CHECK(count_fields(1'000'000'000, 5) + count_fields(1'000'000'000, 8) + count_fields(1'000'000'000, 13) <
          count_fields(1'000'000'000));
}

TEST_CASE("constant t and subfield limits") {
    const TBracket t = t_constant(100'000'000);
    CHECK(t.t.width() < 1e-3);
    CHECK(t.t.contains(0.4018));
    const TBracket coarse = t_constant(1'000'000);
    CHECK(coarse.t.lower <= t.t.lower);
    CHECK(coarse.t.upper >= t.t.upper);

    const Bracket five = p_k_limit(5, t);
    CHECK(five.lower == doctest::Approx(2.0 / (6 * std::sqrt(5.0) * t.t.upper)));
    CHECK(five.upper == doctest::Approx(2.0 / (6 * std::sqrt(5.0) * t.t.lower)));
    const Bracket eight = p_k_limit(8, t);
    CHECK(eight.mid() == doctest::Approx(4.0 / (16 * 3 * std::sqrt(2.0)) / t.t.mid()).epsilon(1e-3));
    CHECK(p_k_limit(12, t).upper == 0);
    CHECK_THROWS(p_k_limit(9, t));
}

TEST_CASE("density bracket nesting and empirical ratio") {
    const TBracket t = t_constant(100'000'000);
    const FormClassTable table = build_table(1, 20000, TableFilter::sum_of_two_squares);
    const DensityBracket small = density_bracket(1000, t, table);
    const DensityBracket big = density_bracket(20000, t, table);
    CHECK(small.lower <= big.lower);
    CHECK(small.upper >= big.upper);
    CHECK(small.lower <= 0.9914);
    CHECK(small.upper >= 0.9914);
    CHECK_THROWS(density_bracket(30000, t, table));
    const EmpiricalDensity e = empirical_density(125, table);
    CHECK(e.fields == 1);
    CHECK(e.ratio() == 1.0);
}
