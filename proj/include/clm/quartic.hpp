#pragma once

// Cyclic quartic fields through their discriminants n = 2^alpha d'^3 a^2, the constant t,
// limiting proportions of fields containing a given quadratic subfield, and a certified
// bracket for the proportion whose quadratic subfield has class number prime to 3.

#include <cstdint>
#include <optional>
#include <vector>

#include "clm/quadforms.hpp"

namespace clm {

struct QuarticDisc {
    unsigned alpha = 0;         // 0, 4, 6 or 11
    std::uint64_t d_prime = 1;  // squarefree, primes 1 mod 4
    std::uint64_t a = 1;        // odd squarefree, coprime to d'

    /// n = 2^alpha d'^3 a^2; throws std::overflow_error past 2^64.
    std::uint64_t n() const;
    /// Discriminant of the quadratic subfield: d' for alpha < 11, 8 d' for alpha = 11.
    std::uint64_t quadratic_discriminant() const;
};

bool is_admissible(const QuarticDisc& disc);

/// Decomposes n; nullopt unless n has the admissible shape.
std::optional<QuarticDisc> decompose_quartic_disc(std::uint64_t n);

/// Number of cyclic quartic fields of discriminant n. Throws on an inadmissible n.
std::uint64_t h_of_disc(const QuarticDisc& disc);

/// Exact #C(x), or #C_k(x) for k = Q(sqrt d) when d is given (d fundamental). x <= 10^12.
std::uint64_t count_fields(std::uint64_t x, std::optional<std::int64_t> d = std::nullopt);

/// Fundamental d <= D with a nonempty family: d' or 8 d' with d' a product of primes 1 mod 4.
std::vector<std::uint64_t> quartic_subfield_discriminants(std::uint64_t D);

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

struct TBracket {
    std::uint64_t P = 0;
    Bracket t;
};

/// Euler product over primes p = 1 mod 4 up to P with the tail of the logarithm bounded by 4/sqrt(P).
TBracket t_constant(std::uint64_t P);

/// The weight c_d with lim p_k = c_d / t: sigma0(d)/prod (p+1)sqrt(p), divided by 16 for even d.
/// Zero when d < 0 or a prime 3 mod 4 divides d. Throws on a non-fundamental d.
double subfield_weight(std::int64_t d);

Bracket p_k_limit(std::int64_t d, const TBracket& t);

struct DensityBracket {
    double lower = 0.0;
    double upper = 0.0;
    std::uint64_t D = 0;
    double mass_lower = 0.0;  // sum_{d <= D} lim p_k, bracketed through t
    double mass_upper = 0.0;
    double weight_not_div3 = 0.0;  // sum of c_d over d <= D with 3 not dividing h
    double weight_total = 0.0;
    std::uint64_t subfields = 0;
    std::uint64_t subfields_div3 = 0;
};

/// Throws std::out_of_range if the table misses some needed d <= D.
DensityBracket density_bracket(std::uint64_t D, const TBracket& t, const FormClassTable& table);

struct EmpiricalDensity {
    std::uint64_t x = 0;
    std::uint64_t fields = 0;
    std::uint64_t fields_not_div3 = 0;
    double ratio() const { return fields == 0 ? 0.0 : static_cast<double>(fields_not_div3) / static_cast<double>(fields); }
};

EmpiricalDensity empirical_density(std::uint64_t x, const FormClassTable& table);

}  // namespace clm
