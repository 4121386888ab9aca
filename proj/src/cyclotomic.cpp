#include "clm/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "clm/arith.hpp"

namespace clm {

namespace {

// Exact quotient by a monic divisor.
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    const std::size_t dn = den.size() - 1;
    std::vector<Int> quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const Int c = num[i];
        quot[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return quot;
}

std::mutex cache_mutex;
std::map<std::uint64_t, std::vector<Int>> cache;

const std::vector<Int>& cyclotomic_unlocked(std::uint64_t m) {
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    std::vector<Int> poly(m + 1, 0);
    poly[0] = -1;
    poly[m] = 1;
    for (std::uint64_t d : arith::divisors(m))
        if (d != m) poly = poly_divide_exact(poly, cyclotomic_unlocked(d));
    return cache.emplace(m, std::move(poly)).first->second;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_polynomial(0)");
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cyclotomic_unlocked(m);
}

CycloElement::CycloElement(std::uint64_t m) : m_(m) {
    if (m == 0) throw std::invalid_argument("CycloElement: modulus 0");
    c_.assign(arith::euler_phi(m), Rational(0));
}

CycloElement::CycloElement(std::uint64_t m, const Rational& r) : CycloElement(m) { c_[0] = r; }

void CycloElement::reduce(std::vector<Rational>& poly) const {
    const auto& phi = cyclotomic_polynomial(m_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        if (poly[i] == 0) continue;
        const Rational c = poly[i];
        for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
    }
    poly.resize(deg);
}

CycloElement CycloElement::zeta_power(std::uint64_t m, std::int64_t k) {
    CycloElement out(m);
    const auto mm = static_cast<std::int64_t>(m);
    const auto e = static_cast<std::size_t>(((k % mm) + mm) % mm);
    std::vector<Rational> poly(std::max(e + 1, out.c_.size()), Rational(0));
    poly[e] = 1;
    out.reduce(poly);
    out.c_ = std::move(poly);
    return out;
}

bool CycloElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational CycloElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return c_[0];
}

std::complex<double> CycloElement::to_complex() const {
    std::complex<double> z = 0;
    const double theta = 2 * std::numbers::pi / static_cast<double>(m_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) z += to_double(c_[i]) * std::polar(1.0, theta * static_cast<double>(i));
    return z;
}

std::string CycloElement::str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[i].str() + ")";
        if (i > 0) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

void CycloElement::check_same(const CycloElement& o) const {
    if (o.m_ != m_) throw std::invalid_argument("cyclotomic moduli differ");
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycloElement& CycloElement::operator*=(const CycloElement& o) {
    check_same(o);
    if (c_.size() == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Rational> poly(2 * c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) poly[i + j] += c_[i] * o.c_[j];
    }
    reduce(poly);
    c_ = std::move(poly);
    return *this;
}

CycloElement& CycloElement::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

bool CycloElement::operator==(const CycloElement& o) const { return m_ == o.m_ && c_ == o.c_; }

CycloElement CycloElement::galois(std::uint64_t a) const {
    if (std::gcd(a, m_) != 1) throw std::invalid_argument("galois: exponent not coprime to m");
    CycloElement out(m_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) out += zeta_power(m_, static_cast<std::int64_t>(i * a % m_)) * c_[i];
    return out;
}

Rational CycloElement::norm() const {
    CycloElement prod(m_, Rational(1));
    for (std::uint64_t a = 1; a <= m_; ++a)
        if (std::gcd(a, m_) == 1) prod *= galois(a);
    return prod.rational_value();
}

}  // namespace clm
