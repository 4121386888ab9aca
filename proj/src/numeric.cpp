#include "clm/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace clm {

Int ipow(const Int& base, std::uint64_t exponent) {
    Int result = 1;
    Int b = base;
    while (exponent > 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent > 0) b *= b;
    }
    return result;
}

Rational rpow(const Rational& base, std::int64_t exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("rpow: zero to a negative power");
        return Rational(1) / rpow(base, -exponent);
    }
    Rational num = ipow(boost::multiprecision::numerator(base), static_cast<std::uint64_t>(exponent));
    Rational den = ipow(boost::multiprecision::denominator(base), static_cast<std::uint64_t>(exponent));
    return num / den;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const Int& r) { return r.convert_to<double>(); }

double to_double_down(const Rational& r) {
    double d = to_double(r);
    if (Rational(d) > r) d = std::nextafter(d, -INFINITY);
    return d;
}

double to_double_up(const Rational& r) {
    double d = to_double(r);
    if (Rational(d) < r) d = std::nextafter(d, INFINITY);
    return d;
}

std::string to_string(const Rational& r) { return r.str(); }

int valuation(const Int& n, std::uint64_t p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    if (p < 2) throw std::invalid_argument("valuation: p < 2");
    Int m = abs(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& r, std::uint64_t p) {
    return valuation(boost::multiprecision::numerator(r), p) -
           valuation(boost::multiprecision::denominator(r), p);
}

}  // namespace clm
