#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace clm {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int ipow(const Int& base, std::uint64_t exponent);
Rational rpow(const Rational& base, std::int64_t exponent);

double to_double(const Rational& r);
double to_double(const Int& r);

// Outward rounding helpers for reporting certified rational brackets as doubles.
double to_double_down(const Rational& r);
double to_double_up(const Rational& r);

std::string to_string(const Rational& r);

/// Closed interval with exact rational endpoints.
struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational width() const { return hi - lo; }
};

/// p-adic valuation of a nonzero integer / rational. Throws on zero.
int valuation(const Int& n, std::uint64_t p);
int valuation(const Rational& r, std::uint64_t p);

}  // namespace clm
