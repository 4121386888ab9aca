#pragma once

// Bernoulli elements beta(chi) = sum (t/f) zeta^{-log_chi t} of Dirichlet characters,
// Teichmuller lifts modulo q^k, valuation checks of beta against class numbers of
// imaginary quadratic fields, and the class of mu_F on the minus part.

#include <cstdint>
#include <vector>

#include "clm/cyclotomic.hpp"
#include "clm/modules.hpp"
#include "clm/numeric.hpp"

namespace clm {

/// chi(t) = zeta_order^{exponent[t]} for t a unit mod conductor; exponent[t] = -1 off the units.
struct DirichletCharacterData {
    std::uint64_t conductor = 1;
    std::uint64_t order = 1;
    std::vector<std::int64_t> exponent;

    bool is_odd() const;
    bool is_trivial() const { return order == 1; }
};

/// Kronecker character (d / .) of a fundamental discriminant d, conductor |d|.
DirichletCharacterData quadratic_character(std::int64_t d);

/// omega_q: t -> zeta_{q-1}^{log_g t}, g the least primitive root; zeta_{q-1} maps to the
/// Teichmuller lift of g under the q-adic embedding used below.
DirichletCharacterData teichmuller_character(std::uint64_t q);

/// Checks multiplicativity, primitivity and the unit support. Throws std::invalid_argument.
void validate_character(const DirichletCharacterData& chi);

/// Throws std::invalid_argument for even or trivial chi.
CycloElement beta_chi(const DirichletCharacterData& chi);

/// Teichmuller lift of t modulo q^precision (x <- x^q iterated).
std::uint64_t teichmuller_lift(std::uint64_t t, std::uint64_t q, unsigned precision);

/// Image of an element of Q(zeta_{q-1}) with q-integral coefficients in Z/q^precision,
/// zeta_{q-1} -> teichmuller_lift(g).
std::uint64_t embed_qadic(const CycloElement& x, std::uint64_t q, unsigned precision);

struct TeichmullerCheck {
    std::uint64_t q = 0;
    unsigned precision = 0;
    std::uint64_t modulus = 0;
    std::uint64_t residue = 0;        // sum t T(t)^{-1} mod q^precision
    std::uint64_t via_beta = 0;       // q beta(omega_q) under the embedding
    bool ok = false;                  // residue = -1 mod q and both routes agree
};

TeichmullerCheck teichmuller_unit_check(std::uint64_t q, unsigned precision);

struct StickelbergerRow {
    std::int64_t d = 0;
    std::uint64_t p = 0;
    std::uint64_t h = 0;
    Rational beta;
    int v_h = 0;
    int v_beta = 0;
    bool exception_branch = false;
    bool pass = false;
};

/// v_p(h(d)) against v_p(beta(chi_d)) for a negative fundamental d and an odd prime p not
/// dividing 2d. The pair d = -3, p = 3 instead asserts v_3(beta) = -1 and 3 not dividing h.
StickelbergerRow stickelberger_valuation_test(std::int64_t d, std::uint64_t p);
/// Same with h(d) and beta(chi_d) supplied by the caller.
StickelbergerRow stickelberger_valuation_test(std::int64_t d, std::uint64_t p, std::uint64_t h, const Rational& beta);

/// (w/2) |beta(chi_d)| with w = 6, 4, 2 for d = -3, -4 and otherwise.
Rational bernoulli_class_number(std::int64_t d);

/// One q in U: the designated prime of the component on which G acts on mu_q.
struct MuEntry {
    std::uint64_t q = 0;
    MaximalIdeal ideal;
    std::uint64_t chi_order = 0;
};

/// Sum over U of the classes of p_q. Throws on an inconsistent entry.
GrothendieckClass mu_minus_class(const std::vector<MuEntry>& entries, const ClassDatum& datum,
                                 std::uint64_t group_order);

}  // namespace clm
