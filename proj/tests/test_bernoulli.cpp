#include <doctest.h>

#include "clm/arith.hpp"
#include "clm/bernoulli.hpp"
#include "clm/quadforms.hpp"

using namespace clm;

TEST_CASE("characters") {
    const auto chi = quadratic_character(-23);
    CHECK(chi.conductor == 23);
    CHECK(chi.is_odd());
    CHECK_FALSE(quadratic_character(5).is_odd());
    CHECK_NOTHROW(validate_character(chi));
    CHECK_THROWS(quadratic_character(9));
    const auto w = teichmuller_character(7);
    CHECK(w.order == 6);
    CHECK(w.is_odd());
    CHECK_THROWS(teichmuller_character(2));
    auto broken = chi;
    broken.exponent[2] = 1 - broken.exponent[2];
    CHECK_THROWS(validate_character(broken));
}

TEST_CASE("Bernoulli elements") {
    CHECK(beta_chi(quadratic_character(-3)).rational_value() == Rational(-1, 3));
    CHECK(beta_chi(quadratic_character(-4)).rational_value() == Rational(-1, 2));
    CHECK(beta_chi(quadratic_character(-23)).rational_value() == -3);
    CHECK_THROWS(beta_chi(quadratic_character(5)));
    for (std::int64_t d = -3; d >= -2000; --d)
        if (is_fundamental_discriminant(d)) CHECK(bernoulli_class_number(d) == static_cast<long>(class_number_definite(d)));
}

TEST_CASE("Teichmuller units") {
    CHECK(teichmuller_lift(2, 5, 3) == arith::powmod(teichmuller_lift(2, 5, 3), 5, 125));
    const auto t3 = teichmuller_unit_check(3, 4);
    CHECK(t3.ok);
    CHECK(t3.residue % 3 == 2);
    const auto t5 = teichmuller_unit_check(5, 1);
    CHECK(t5.residue == 4);
    const auto t7 = teichmuller_unit_check(7, 8);
    CHECK(t7.ok);
    CHECK(t7.residue % 7 != 0);
    CHECK_THROWS(teichmuller_unit_check(2, 3));
}

TEST_CASE("Stickelberger valuations") {
    auto row = stickelberger_valuation_test(-23, 3);
    CHECK(row.pass);
    CHECK(row.v_h == 1);
    CHECK(row.v_beta == 1);
    row = stickelberger_valuation_test(-4, 3);
    CHECK(row.pass);
    CHECK(row.v_h == 0);
    row = stickelberger_valuation_test(-3, 3);
    CHECK(row.exception_branch);
    CHECK(row.pass);
    CHECK(row.v_beta == -1);
    CHECK_THROWS(stickelberger_valuation_test(-15, 5));
    CHECK_THROWS(stickelberger_valuation_test(-23, 2));
}
