#pragma once

// Partial Euler products L^(S), Dirichlet coefficients of Z_u(f, s) for
// f = phi o class_of, and the coefficient-exact identities between them.
//
// Sign convention: ClassDatum::ideal_class(m) is read as the class of R/m in the
// Grothendieck group, so the ideal class of m itself is its negative and
// phi^{-1}([m]) = phi(ideal_class(m)).

#include <complex>
#include <cstdint>
#include <vector>

#include "clm/abelian.hpp"
#include "clm/cyclotomic.hpp"
#include "clm/measure.hpp"
#include "clm/modules.hpp"

namespace clm {

/// phi evaluated on the datum class of an ideal, as an exact root of unity in Q(zeta_m),
/// m = order of phi (m = 1 or 2 give rational values).
CycloElement character_value(const ClassDatum& datum, const Character& phi, const GroupElement& c);

/// prod over ideals of (1 - phi^{-1}([m]) Nm^{-s})^{-1}. Throws std::domain_error at a pole.
std::complex<double> partial_L(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                               const Character& phi, std::complex<double> s);

/// Exact value at an integer s >= 1 when phi takes only the values +-1 on the ideals.
Rational partial_L_rational(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum, const Character& phi,
                            unsigned s);

/// Coefficients c(n), 1 <= n <= B, in Q(zeta_m); c[0] is unused.
struct DirichletCoefficients {
    std::uint64_t bound = 0;
    std::uint64_t modulus = 1;
    std::vector<CycloElement> c;

    bool operator==(const DirichletCoefficients& o) const { return bound == o.bound && c == o.c; }
};

DirichletCoefficients dirichlet_one(std::uint64_t bound, std::uint64_t modulus);

/// (a * b)(n) = sum_{d | n} a(d) b(n / d): OpenMP over n, and the serial reference.
DirichletCoefficients dirichlet_convolve(const DirichletCoefficients& a, const DirichletCoefficients& b);
DirichletCoefficients dirichlet_convolve_serial(const DirichletCoefficients& a, const DirichletCoefficients& b);

/// c(n) n^{-shift}: the series evaluated at s + shift.
DirichletCoefficients shift(const DirichletCoefficients& a, unsigned shift);

/// Local coefficient of Z_u at m^j: sum_{|lambda| = j} #Sur(R^u, M_lambda) / (q^{uj} #Aut M_lambda).
Rational z_local_weight(const Int& q, unsigned u, unsigned j);

/// Sum over finite modules M with |M| <= B supported on the ideals of
/// w_u(M) f(M) |M|^{-s}, f = phi o class_of, u given per ideal.
DirichletCoefficients z_series_coeffs(const std::vector<MaximalIdeal>& ideals, const std::vector<unsigned>& ranks,
                                      const ClassDatum& datum, const Character& phi, std::uint64_t B);

/// Same, with u read off the measure.
DirichletCoefficients z_series_coeffs(const ClmMeasure& measure, const ClassDatum& datum, const Character& phi,
                                      std::uint64_t B);

/// Coefficients of L^(S)(phi^{-1}, s + k).
DirichletCoefficients l_series_coeffs(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                                      const Character& phi, unsigned k, std::uint64_t B);

struct IdentityCheck {
    bool holds = false;
    std::uint64_t bound = 0;
    std::uint64_t mismatches = 0;
    double max_deviation = 0.0;  // largest |difference| of mismatching coefficients
};

IdentityCheck compare(const DirichletCoefficients& a, const DirichletCoefficients& b);

/// Z_u against prod_{k = 1}^{u} L^(S)(phi^{-1}, s + k), all ideals sharing the rank u.
IdentityCheck verify_analytic_identity(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                                       const Character& phi, unsigned u, std::uint64_t B);

/// Z_{u+v} against Z_u * Z_v(s + u).
IdentityCheck verify_product_identity(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                                      const Character& phi, unsigned u, unsigned v, std::uint64_t B);

/// Datum with C = group and pseudo-random classes: a seeded hash of the ideal id.
ClassDatum seeded_datum(const GroupSpec& c, const std::vector<MaximalIdeal>& ideals, std::uint64_t seed);

struct C58Point {
    std::uint64_t cutoff = 0;
    std::size_t ideals = 0;
    double log_lower = 0.0;  // bracket for log of the ratio
    double log_upper = 0.0;
    double ratio_lower = 0.0;
    double ratio_upper = 0.0;
};

/// The n = 29 component of Z[C58] over primes p <= N (p != 2, 29), with synthetic classes
/// in (Z/2)^3. Returns prod_k L(phi^{-1}, k) / prod_k zeta(k) for every cutoff, k summed
/// with a certified tail. A trivial phi gives exactly 1.
std::vector<C58Point> c58_equidistribution_demo(const std::vector<std::uint64_t>& cutoffs,
                                                const std::vector<std::uint64_t>& phi_exponents, std::uint64_t seed);

}  // namespace clm
