#include <doctest.h>

#include "clm/arith.hpp"
#include "clm/numeric.hpp"

using namespace clm;

TEST_CASE("integer roots") {
    CHECK(arith::isqrt(0) == 0);
    CHECK(arith::isqrt(15) == 3);
    CHECK(arith::isqrt(16) == 4);
    CHECK(arith::isqrt(~0ULL) == 4294967295ULL);
    CHECK(arith::icbrt(26) == 2);
    CHECK(arith::icbrt(27) == 3);
    CHECK(arith::icbrt(1'000'000'000'000ULL) == 10000);
}

TEST_CASE("modular arithmetic") {
    CHECK(arith::powmod(3, 4, 5) == 1);
    CHECK(arith::mulmod(~0ULL - 1, ~0ULL - 1, ~0ULL) == 1);
    CHECK(arith::invmod(3, 7) == 5);
    CHECK(arith::multiplicative_order(3, 5) == 4);
    CHECK(arith::multiplicative_order(3, 4) == 2);
    CHECK(arith::primitive_root(7) == 3);
    CHECK(arith::primitive_root(23) == 5);
    CHECK_THROWS(arith::checked_pow(10, 20));
}

TEST_CASE("factorization and divisor functions") {
    const auto f = arith::factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
    CHECK(arith::is_prime(1'000'000'007ULL));
    CHECK_FALSE(arith::is_prime(1));
    CHECK(arith::is_squarefree(30));
    CHECK_FALSE(arith::is_squarefree(12));
    CHECK(arith::euler_phi(58) == 28);
    CHECK(arith::sigma0(5) == 2);
    CHECK(arith::sigma0(8) == 4);
    CHECK(arith::divisors(12).size() == 6);
    CHECK(arith::primes_up_to(100).size() == 25);

    arith::FactorTable table(10000);
    std::vector<std::pair<std::uint32_t, unsigned>> out;
    for (std::uint32_t n = 2; n <= 10000; ++n) {
        table.factor(n, out);
        const auto ref = arith::factorize(n);
        REQUIRE(out.size() == ref.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(out[i].first == ref[i].first);
            CHECK(out[i].second == ref[i].second);
        }
    }
}

TEST_CASE("kronecker symbol") {
    CHECK(arith::kronecker(5, 2) == -1);
    CHECK(arith::kronecker(5, 11) == 1);
    CHECK(arith::kronecker(-4, 3) == -1);
    CHECK(arith::kronecker(-4, 5) == 1);
    CHECK(arith::kronecker(8, 7) == 1);
    CHECK(arith::kronecker(-23, 2) == 1);
    CHECK(arith::kronecker(12, 3) == 0);
    // Euler's criterion for odd primes.
    for (std::uint64_t p : {3, 7, 11, 13, 101})
        for (std::int64_t d : {-23, -4, 5, 12, 13}) {
            const std::uint64_t a = static_cast<std::uint64_t>(((d % static_cast<std::int64_t>(p)) + p) % p);
            if (a == 0) continue;
            const std::uint64_t e = arith::powmod(a, (p - 1) / 2, p);
            CHECK(arith::kronecker(d, p) == (e == 1 ? 1 : -1));
        }
}

TEST_CASE("exact rationals and valuations") {
    CHECK(valuation(Int(24), 2) == 3);
    CHECK(valuation(Rational(-1, 3), 3) == -1);
    CHECK(valuation(Rational(9, 2), 3) == 2);
    CHECK(rpow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(to_double_down(Rational(1, 3)) <= 1.0 / 3);
    CHECK(to_double_up(Rational(1, 3)) >= 1.0 / 3);
    const Interval iv{Rational(1, 3), Rational(1, 2)};
    CHECK(iv.contains(Rational(2, 5)));
    CHECK_FALSE(iv.contains(Rational(3, 5)));
    CHECK(iv.width() == Rational(1, 6));
}
