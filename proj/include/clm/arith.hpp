#pragma once

// Elementary number theory on machine integers.

#include <cstdint>
#include <utility>
#include <vector>

namespace clm::arith {

std::uint64_t isqrt(std::uint64_t n);
std::uint64_t icbrt(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Checked integer power; throws std::overflow_error past 2^64.
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent);

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t sigma0(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Multiplicative order of a modulo n (gcd(a, n) = 1, n >= 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

/// Smallest primitive root modulo an odd prime p (or p = 2).
std::uint64_t primitive_root(std::uint64_t p);

/// Kronecker symbol (d / n) for n >= 1.
int kronecker(std::int64_t d, std::uint64_t n);

/// All primes <= n (odd-only sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

/// Smallest-prime-factor table for fast repeated factorization below a bound.
class FactorTable {
public:
    explicit FactorTable(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t smallest_factor(std::uint32_t n) const { return spf_[n]; }

    /// Factor n <= limit; primes in increasing order.
    void factor(std::uint32_t n, std::vector<std::pair<std::uint32_t, unsigned>>& out) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

}  // namespace clm::arith
