#include "clm/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clm::arith {

std::uint64_t isqrt(std::uint64_t n) {
    using U = unsigned __int128;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && U(r) * r > n) --r;
    while (U(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t icbrt(std::uint64_t n) {
    using U = unsigned __int128;
    auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
    while (r > 0 && U(r) * r * r > n) --r;
    while (U(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exponent > 0) {
        if (exponent & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exponent >>= 1U;
    }
    return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("invmod: not invertible");
    std::int64_t mm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (base != 0 && result > UINT64_MAX / base) throw std::overflow_error("checked_pow overflow");
        result *= base;
    }
    return result;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_squarefree(std::uint64_t n) {
    for (const auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

std::uint64_t sigma0(std::uint64_t n) {
    std::uint64_t s = 1;
    for (const auto& [p, e] : factorize(n)) s *= e + 1;
    return s;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 1;
    if (std::gcd(a, n) != 1) throw std::invalid_argument("multiplicative_order: gcd(a, n) != 1");
    std::uint64_t order = euler_phi(n);
    for (const auto& [p, e] : factorize(order)) {
        for (unsigned k = 0; k < e; ++k) {
            if (powmod(a, order / p, n) == 1)
                order /= p;
            else
                break;
        }
    }
    return order;
}

std::uint64_t primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    const auto fs = factorize(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [q, e] : fs) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::invalid_argument("primitive_root: argument is not prime");
}

int kronecker(std::int64_t d, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("kronecker: n = 0");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        const std::int64_t dm8 = ((d % 8) + 8) % 8;
        if (dm8 % 2 == 0) return 0;
        if (dm8 == 3 || dm8 == 5) result = -result;
    }
    // Jacobi symbol (d / n) for odd n.
    std::int64_t a = d % static_cast<std::int64_t>(n);
    if (a < 0) a += static_cast<std::int64_t>(n);
    auto ua = static_cast<std::uint64_t>(a);
    while (ua != 0) {
        while (ua % 2 == 0) {
            ua /= 2;
            const std::uint64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(ua, n);
        if (ua % 4 == 3 && n % 4 == 3) result = -result;
        ua %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint32_t> primes;
    if (n < 2) return primes;
    primes.push_back(2);
    // composite[i] marks 2i + 1.
    const std::uint64_t half = (n + 1) / 2;
    std::vector<bool> composite(half, false);
    for (std::uint64_t i = 1; i < half; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t j = (p * p) / 2; j < half; j += p) composite[j] = true;
    }
    return primes;
}

FactorTable::FactorTable(std::uint32_t limit) : limit_(limit), spf_(static_cast<std::size_t>(limit) + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = i;
    }
}

void FactorTable::factor(std::uint32_t n, std::vector<std::pair<std::uint32_t, unsigned>>& out) const {
    out.clear();
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
}

}  // namespace clm::arith
