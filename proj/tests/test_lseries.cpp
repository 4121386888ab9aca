#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "clm/abelian.hpp"
#include "clm/arith.hpp"
#include "clm/cyclotomic.hpp"
#include "clm/lseries.hpp"
#include "clm/pipelines.hpp"

using namespace clm;

namespace {

std::vector<MaximalIdeal> trivial_ideals(const std::vector<std::uint64_t>& primes) {
    const GroupSpec g = build_group({1});
    return maximal_ideals(components(g).front(), primes, 1);
}

Character trivial_character(const GroupSpec& c) {
    for (const auto& chi : all_characters(c))
        if (chi.order == 1) return chi;
    throw std::logic_error("no trivial character");
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
    CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
    const CycloElement i = CycloElement::zeta_power(4, 1);
    CHECK(i * i == CycloElement(4, Rational(-1)));
    const CycloElement z = CycloElement::zeta_power(5, 1);
    CycloElement sum(5);
    for (int k = 0; k < 5; ++k) sum += CycloElement::zeta_power(5, k);
    CHECK(sum.is_zero());
    CHECK((z * CycloElement::zeta_power(5, -1)).rational_value() == 1);
    CHECK(z.galois(2) == CycloElement::zeta_power(5, 2));
    CHECK(z.norm() == 1);
    CHECK(std::abs(CycloElement::zeta_power(8, 1).to_complex() - std::polar(1.0, M_PI / 4)) < 1e-12);
}

TEST_CASE("partial L-functions") {
    const auto ideals = trivial_ideals({3});
    ClassDatum trivial;
    trivial.group = build_group({1});
    trivial.ideal_class[ideals[0].id()] = {0};
    CHECK(partial_L_rational(ideals, trivial, trivial_character(trivial.group), 1) == Rational(3, 2));

    ClassDatum c2;
    c2.group = build_group({2});
    c2.ideal_class[ideals[0].id()] = {1};
    Character sign;
    for (const auto& chi : all_characters(c2.group))
        if (chi.order == 2) sign = chi;
    for (unsigned s : {1U, 2U, 3U})
        CHECK(partial_L_rational(ideals, c2, sign, s) == 1 / (1 + Rational(Int(1), ipow(Int(3), s))));
    const auto v = partial_L(ideals, c2, sign, {2.0, 0.0});
    CHECK(std::abs(v - std::complex<double>(0.9, 0.0)) < 1e-12);
}

TEST_CASE("Dirichlet series kernels") {
    const std::uint64_t B = 2000;
    DirichletCoefficients zeta = dirichlet_one(B, 3);
    for (std::uint64_t n = 1; n <= B; ++n) zeta.c[n] = CycloElement(3, Rational(1));
    const DirichletCoefficients d = dirichlet_convolve(zeta, zeta);
    CHECK(d == dirichlet_convolve_serial(zeta, zeta));
    for (std::uint64_t n : {1, 12, 360, 1999}) CHECK(d.c[n].rational_value() == static_cast<long>(arith::sigma0(n)));
    CHECK(dirichlet_convolve(zeta, dirichlet_one(B, 3)) == zeta);
    CHECK(shift(zeta, 2).c[10].rational_value() == Rational(1, 100));
    CHECK_THROWS(dirichlet_convolve(zeta, dirichlet_one(B + 1, 3)));
}

TEST_CASE("local Z weights") {
    for (int q : {2, 3, 5})
        for (unsigned j = 0; j <= 6; ++j) CHECK(z_local_weight(q, 1, j) == rpow(Rational(q), -static_cast<int>(j)));
    CHECK(z_local_weight(2, 0, 0) == 1);
    CHECK(z_local_weight(2, 0, 1) == 0);
}

TEST_CASE("analytic and product identities") {
    const auto ideals = trivial_ideals({2});
    ClassDatum trivial;
    trivial.group = build_group({1});
    trivial.ideal_class[ideals[0].id()] = {0};
    const Character one = trivial_character(trivial.group);
    CHECK(verify_analytic_identity(ideals, trivial, one, 3, 4096).holds);
    CHECK(verify_analytic_identity(ideals, trivial, one, 0, 4096).holds);

    const GroupSpec c4 = build_group({4});
    const auto comps = components(c4);
    const auto four = *std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.n == 4; });
    std::vector<std::uint64_t> primes;
    for (auto p : arith::primes_up_to(200))
        if (p != 2) primes.push_back(p);
    const auto ids = maximal_ideals(four, primes, 4);
    const ClassDatum datum = seeded_datum(build_group({3}), ids, 4);
    for (const auto& phi : all_characters(datum.group)) {
        CHECK(verify_analytic_identity(ids, datum, phi, 1, 10000).holds);
        CHECK(verify_product_identity(ids, datum, phi, 1, 1, 10000).holds);
    }
}

TEST_CASE("identity suite pipeline") {
    const auto r = lseries_suite("C4", "C3", 200, 2000, 2, 2, 3);
    CHECK(r.ok);
    CHECK(r.result.at("mismatches").get<std::uint64_t>() == 0);
}

TEST_CASE("C58 ratios") {
    const auto trivial = c58_equidistribution_demo({100, 1000}, {0, 0, 0}, 1);
    for (const auto& p : trivial) {
        CHECK(p.ratio_lower == doctest::Approx(1.0));
        CHECK(p.ratio_upper == doctest::Approx(1.0));
    }
    const auto seq = c58_equidistribution_demo({100, 10000}, {1, 0, 1}, 1);
    REQUIRE(seq.size() == 2);
    CHECK(seq[1].ratio_upper < seq[0].ratio_lower);
    CHECK_THROWS(c58_equidistribution_demo({100}, {1, 0}, 1));
}
