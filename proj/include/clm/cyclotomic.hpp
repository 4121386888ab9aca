#pragma once

// Exact arithmetic in Q(zeta_m): rational coefficients in the power basis,
// reduced modulo the m-th cyclotomic polynomial.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "clm/numeric.hpp"

namespace clm {

/// Integer coefficients of Phi_m, constant term first.
const std::vector<Int>& cyclotomic_polynomial(std::uint64_t m);

class CycloElement {
public:
    CycloElement() : CycloElement(1) {}
    explicit CycloElement(std::uint64_t m);
    CycloElement(std::uint64_t m, const Rational& r);

    static CycloElement zeta_power(std::uint64_t m, std::int64_t k);

    std::uint64_t modulus() const { return m_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Throws unless is_rational().
    Rational rational_value() const;
    std::complex<double> to_complex() const;
    std::string str() const;

    CycloElement& operator+=(const CycloElement& o);
    CycloElement& operator-=(const CycloElement& o);
    CycloElement& operator*=(const CycloElement& o);
    CycloElement& operator*=(const Rational& r);

    friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
    friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
    friend CycloElement operator*(CycloElement a, const CycloElement& b) { return a *= b; }
    friend CycloElement operator*(CycloElement a, const Rational& r) { return a *= r; }
    bool operator==(const CycloElement& o) const;

    /// Image under zeta -> zeta^a, gcd(a, m) = 1.
    CycloElement galois(std::uint64_t a) const;
    /// Norm down to Q (product of all conjugates).
    Rational norm() const;

private:
    std::uint64_t m_;
    std::vector<Rational> c_;  // length phi(m)
    void check_same(const CycloElement& o) const;
    void reduce(std::vector<Rational>& poly) const;
};

}  // namespace clm
