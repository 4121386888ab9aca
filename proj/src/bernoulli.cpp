#include "clm/bernoulli.hpp"

#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "clm/arith.hpp"
#include "clm/quadforms.hpp"

namespace clm {

bool DirichletCharacterData::is_odd() const {
    if (conductor <= 2) return false;
    const std::int64_t e = exponent.at(conductor - 1);
    return order % 2 == 0 && static_cast<std::uint64_t>(e) == order / 2;
}

DirichletCharacterData quadratic_character(std::int64_t d) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument(std::to_string(d) + " is not fundamental");
    DirichletCharacterData chi;
    chi.conductor = static_cast<std::uint64_t>(d < 0 ? -d : d);
    chi.order = 2;
    chi.exponent.assign(chi.conductor, -1);
    for (std::uint64_t t = 1; t < chi.conductor; ++t)
        if (std::gcd(t, chi.conductor) == 1) chi.exponent[t] = arith::kronecker(d, t) == 1 ? 0 : 1;
    return chi;
}

DirichletCharacterData teichmuller_character(std::uint64_t q) {
    if (q == 2 || !arith::is_prime(q)) throw std::invalid_argument("teichmuller_character needs an odd prime");
    DirichletCharacterData chi;
    chi.conductor = q;
    chi.order = q - 1;
    chi.exponent.assign(q, -1);
    const std::uint64_t g = arith::primitive_root(q);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        chi.exponent[x] = static_cast<std::int64_t>(k);
        x = x * g % q;
    }
    return chi;
}

void validate_character(const DirichletCharacterData& chi) {
    const std::uint64_t f = chi.conductor;
    const auto m = static_cast<std::int64_t>(chi.order);
    if (f == 0 || chi.order == 0 || chi.exponent.size() != f) throw std::invalid_argument("malformed character");
    if (f == 1) return;
    std::int64_t g = m;
    for (std::uint64_t t = 0; t < f; ++t) {
        const bool unit = std::gcd(t, f) == 1;
        if (unit != (chi.exponent[t] >= 0)) throw std::invalid_argument("character support is not the unit group");
        if (unit) {
            if (chi.exponent[t] >= m) throw std::invalid_argument("exponent out of range");
            g = std::gcd(g, chi.exponent[t]);
        }
    }
    if (chi.exponent[1] != 0) throw std::invalid_argument("chi(1) != 1");
    if (g != 1) throw std::invalid_argument("character order is smaller than stated");
    // Spot-check multiplicativity against a few small units.
    for (std::uint64_t b : {2, 3, 5, 7}) {
        if (b >= f || std::gcd(b, f) != 1) continue;
        for (std::uint64_t a = 1; a < f; ++a) {
            if (chi.exponent[a] < 0) continue;
            if ((chi.exponent[a] + chi.exponent[b]) % m != chi.exponent[a * b % f])
                throw std::invalid_argument("character is not multiplicative");
        }
    }
    for (const auto& [ell, e] : arith::factorize(f)) {
        const std::uint64_t sub = f / ell;
        bool nontrivial = false;
        for (std::uint64_t t = 1; t < f && !nontrivial; t += sub)
            if (chi.exponent[t] > 0) nontrivial = true;
        if (!nontrivial) throw std::invalid_argument("character is not primitive");
    }
}

CycloElement beta_chi(const DirichletCharacterData& chi) {
    validate_character(chi);
    if (chi.is_trivial()) throw std::invalid_argument("beta_chi: trivial character");
    if (!chi.is_odd()) throw std::invalid_argument("beta_chi: even character");
    // Group the integer weights t by exponent before touching the field.
    if (chi.conductor > (std::uint64_t{1} << 31)) throw std::invalid_argument("beta_chi: conductor too large");
    std::vector<std::int64_t> weight(chi.order, 0);
    const auto f = static_cast<std::int64_t>(chi.conductor);
    for (std::int64_t t = 1; t < f; ++t) {
        const std::int64_t e = chi.exponent[static_cast<std::size_t>(t)];
        if (e >= 0) weight[static_cast<std::size_t>(e)] += t;
    }
    CycloElement out(chi.order);
    for (std::size_t e = 0; e < weight.size(); ++e)
        if (weight[e] != 0)
            out += CycloElement::zeta_power(chi.order, -static_cast<std::int64_t>(e)) * Rational(Int(weight[e]), Int(f));
    return out;
}

namespace {

std::uint64_t prime_power_modulus(std::uint64_t q, unsigned precision) {
    if (precision == 0) throw std::invalid_argument("precision must be >= 1");
    const std::uint64_t mod = arith::checked_pow(q, precision);
    if (mod >= (std::uint64_t{1} << 62)) throw std::invalid_argument("q^precision too large");
    return mod;
}

std::uint64_t reduce_int(const Int& x, std::uint64_t mod) {
    Int r = x % mod;
    if (r < 0) r += mod;
    return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t teichmuller_lift(std::uint64_t t, std::uint64_t q, unsigned precision) {
    const std::uint64_t mod = prime_power_modulus(q, precision);
    if (t % q == 0) throw std::invalid_argument("teichmuller_lift of a non-unit");
    std::uint64_t x = t % mod;
    for (unsigned k = 0; k < precision; ++k) x = arith::powmod(x, q, mod);
    return x;
}

std::uint64_t embed_qadic(const CycloElement& x, std::uint64_t q, unsigned precision) {
    if (x.modulus() != q - 1) throw std::invalid_argument("embed_qadic: element must live in Q(zeta_{q-1})");
    const std::uint64_t mod = prime_power_modulus(q, precision);
    const std::uint64_t z = teichmuller_lift(arith::primitive_root(q), q, precision);
    std::uint64_t acc = 0, zi = 1;
    for (const auto& c : x.coefficients()) {
        if (c != 0) {
            const Int den = denominator(c);
            if (den % q == 0) throw std::domain_error("embed_qadic: coefficient not q-integral");
            const std::uint64_t v =
                arith::mulmod(reduce_int(numerator(c), mod), arith::invmod(reduce_int(den, mod), mod), mod);
            acc = (acc + arith::mulmod(v, zi, mod)) % mod;
        }
        zi = arith::mulmod(zi, z, mod);
    }
    return acc;
}

TeichmullerCheck teichmuller_unit_check(std::uint64_t q, unsigned precision) {
    if (q == 2) throw std::invalid_argument("teichmuller_unit_check: q = 2");
    if (!arith::is_prime(q)) throw std::invalid_argument("teichmuller_unit_check: q not prime");
    TeichmullerCheck out;
    out.q = q;
    out.precision = precision;
    out.modulus = prime_power_modulus(q, precision);
    std::uint64_t acc = 0;
    for (std::uint64_t t = 1; t < q; ++t) {
        const std::uint64_t inv = arith::invmod(teichmuller_lift(t, q, precision), out.modulus);
        acc = (acc + arith::mulmod(t, inv, out.modulus)) % out.modulus;
    }
    out.residue = acc;
    CycloElement qb = beta_chi(teichmuller_character(q)) * Rational(static_cast<long long>(q));
    out.via_beta = embed_qadic(qb, q, precision);
    out.ok = out.residue % q == q - 1 && out.via_beta == out.residue;
    return out;
}

Rational bernoulli_class_number(std::int64_t d) {
    if (d >= 0) throw std::invalid_argument("bernoulli_class_number needs d < 0");
    const Rational beta = beta_chi(quadratic_character(d)).rational_value();
    const Rational w_half = d == -3 ? 3 : d == -4 ? 2 : 1;
    return w_half * abs(beta);
}

StickelbergerRow stickelberger_valuation_test(std::int64_t d, std::uint64_t p) {
    if (d >= 0 || !is_fundamental_discriminant(d)) throw std::invalid_argument("d must be negative fundamental");
    return stickelberger_valuation_test(d, p, class_number_definite(d),
                                        beta_chi(quadratic_character(d)).rational_value());
}

StickelbergerRow stickelberger_valuation_test(std::int64_t d, std::uint64_t p, std::uint64_t h,
                                              const Rational& beta) {
    if (d >= 0 || !is_fundamental_discriminant(d)) throw std::invalid_argument("d must be negative fundamental");
    if (p == 2 || !arith::is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    StickelbergerRow row;
    row.d = d;
    row.p = p;
    row.exception_branch = d == -3 && p == 3;
    const std::uint64_t ad = static_cast<std::uint64_t>(-d);
    if (!row.exception_branch && ad % p == 0) throw std::invalid_argument("p divides 2d");
    row.h = h;
    row.beta = beta;
    row.v_h = valuation(Int(row.h), p);
    row.v_beta = valuation(row.beta, p);
    row.pass = row.exception_branch ? (row.v_beta == -1 && row.h % 3 != 0) : row.v_h == row.v_beta;
    return row;
}

GrothendieckClass mu_minus_class(const std::vector<MuEntry>& entries, const ClassDatum& datum,
                                 std::uint64_t group_order) {
    ModuleShape m;
    std::set<std::uint64_t> seen;
    for (const auto& e : entries) {
        if (!arith::is_prime(e.q)) throw std::invalid_argument("mu_minus_class: q not prime");
        if (group_order % e.q == 0) throw std::invalid_argument("mu_minus_class: q divides #G");
        if (e.chi_order != e.q - 1) throw std::invalid_argument("mu_minus_class: chi_q must have order q - 1");
        if (e.ideal.p != e.q) throw std::invalid_argument("mu_minus_class: ideal does not lie above q");
        if (!seen.insert(e.q).second) throw std::invalid_argument("mu_minus_class: repeated q");
        m.torsion[e.ideal] = merge(m.torsion[e.ideal], Partition{1});
    }
    return class_of(m, datum);
}

}  // namespace clm
