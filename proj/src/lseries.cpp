#include "clm/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clm/arith.hpp"

namespace clm {

CycloElement character_value(const ClassDatum& datum, const Character& phi, const GroupElement& c) {
    const std::uint64_t e = datum.group.exponent();
    const std::uint64_t m = phi.order;
    const std::uint64_t k = phi.value_exponent(datum.group, c);
    const std::uint64_t step = e / m;
    if (k % step != 0) throw std::logic_error("character value outside mu_m");
    return CycloElement::zeta_power(m, static_cast<std::int64_t>(k / step));
}

std::complex<double> partial_L(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                               const Character& phi, std::complex<double> s) {
    std::complex<double> value = 1.0;
    for (const auto& m : ideals) {
        const std::complex<double> chi = character_value(datum, phi, datum.class_of_ideal(m)).to_complex();
        const std::complex<double> term = chi * std::exp(-s * m.log_norm());
        const std::complex<double> factor = 1.0 - term;
        if (std::abs(factor) == 0.0) throw std::domain_error("partial_L: pole at ideal " + m.id());
        value /= factor;
    }
    return value;
}

Rational partial_L_rational(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum, const Character& phi,
                            unsigned s) {
    if (s == 0) throw std::domain_error("partial_L_rational: s must be >= 1");
    Rational value = 1;
    for (const auto& m : ideals) {
        const Rational chi = character_value(datum, phi, datum.class_of_ideal(m)).rational_value();
        const Rational x = chi * Rational(Int(1), ipow(m.norm, s));
        value /= 1 - x;
    }
    return value;
}

DirichletCoefficients dirichlet_one(std::uint64_t bound, std::uint64_t modulus) {
    DirichletCoefficients out;
    out.bound = bound;
    out.modulus = modulus;
    out.c.assign(bound + 1, CycloElement(modulus));
    if (bound >= 1) out.c[1] = CycloElement(modulus, Rational(1));
    return out;
}

namespace {

void check_compatible(const DirichletCoefficients& a, const DirichletCoefficients& b) {
    if (a.bound != b.bound || a.modulus != b.modulus) throw std::invalid_argument("Dirichlet series differ in shape");
}

}  // namespace

DirichletCoefficients dirichlet_convolve_serial(const DirichletCoefficients& a, const DirichletCoefficients& b) {
    check_compatible(a, b);
    DirichletCoefficients out = dirichlet_one(a.bound, a.modulus);
    if (a.bound >= 1) out.c[1] = CycloElement(a.modulus);
    for (std::uint64_t d = 1; d <= a.bound; ++d) {
        if (a.c[d].is_zero()) continue;
        for (std::uint64_t e = 1; d * e <= a.bound; ++e)
            if (!b.c[e].is_zero()) out.c[d * e] += a.c[d] * b.c[e];
    }
    return out;
}

DirichletCoefficients dirichlet_convolve(const DirichletCoefficients& a, const DirichletCoefficients& b) {
    check_compatible(a, b);
    const std::uint64_t B = a.bound;
    // Divisor lists by sieve, then each n is owned by one thread.
    std::vector<std::vector<std::uint32_t>> divs(B + 1);
    for (std::uint64_t d = 1; d <= B; ++d) {
        if (a.c[d].is_zero()) continue;
        for (std::uint64_t n = d; n <= B; n += d) divs[n].push_back(static_cast<std::uint32_t>(d));
    }
    DirichletCoefficients out = dirichlet_one(B, a.modulus);
    if (B >= 1) out.c[1] = CycloElement(a.modulus);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t n = 1; n <= static_cast<std::int64_t>(B); ++n) {
        CycloElement acc(a.modulus);
        for (std::uint32_t d : divs[n]) {
            const auto& bv = b.c[static_cast<std::uint64_t>(n) / d];
            if (!bv.is_zero()) acc += a.c[d] * bv;
        }
        out.c[n] = std::move(acc);
    }
    return out;
}

DirichletCoefficients shift(const DirichletCoefficients& a, unsigned k) {
    DirichletCoefficients out = a;
    for (std::uint64_t n = 1; n <= a.bound; ++n)
        if (!out.c[n].is_zero()) out.c[n] *= Rational(Int(1), ipow(Int(n), k));
    return out;
}

Rational z_local_weight(const Int& q, unsigned u, unsigned j) {
    Rational total = 0;
    for (const auto& lam : partitions_of(j)) {
        const Int s = sur_count(lam, q, u);
        if (s == 0) continue;
        total += Rational(s, ipow(q, static_cast<std::uint64_t>(u) * j) * aut_count(lam, q));
    }
    return total;
}

namespace {

std::uint64_t series_modulus(const Character& phi) { return std::max<std::uint64_t>(phi.order, 1); }

// Multiplies c in place by the local series sum_j a_j T^{q^j}.
void multiply_local(DirichletCoefficients& c, std::uint64_t q, const std::vector<CycloElement>& a) {
    const std::uint64_t B = c.bound;
    for (std::uint64_t n = B / q; n >= 1; --n) {
        if (c.c[n].is_zero()) continue;
        std::uint64_t target = n;
        for (std::size_t j = 1; j < a.size(); ++j) {
            target *= q;
            if (target > B) break;
            if (!a[j].is_zero()) c.c[target] += c.c[n] * a[j];
        }
    }
}

bool norm_at_most(const MaximalIdeal& m, std::uint64_t B, std::uint64_t& q) {
    if (m.norm > B) return false;
    q = m.norm.convert_to<std::uint64_t>();
    return true;
}

}  // namespace

DirichletCoefficients z_series_coeffs(const std::vector<MaximalIdeal>& ideals, const std::vector<unsigned>& ranks,
                                      const ClassDatum& datum, const Character& phi, std::uint64_t B) {
    if (ranks.size() != ideals.size()) throw std::invalid_argument("z_series_coeffs: one rank per ideal");
    const std::uint64_t mod = series_modulus(phi);
    DirichletCoefficients c = dirichlet_one(B, mod);
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        std::uint64_t q = 0;
        if (!norm_at_most(ideals[i], B, q)) continue;
        const CycloElement chi = character_value(datum, phi, datum.class_of_ideal(ideals[i]));
        std::vector<CycloElement> a{CycloElement(mod, Rational(1))};
        CycloElement chi_pow(mod, Rational(1));
        for (std::uint64_t j = 1, qj = q; qj <= B; ++j) {
            chi_pow *= chi;
            a.push_back(chi_pow * z_local_weight(ideals[i].norm, ranks[i], static_cast<unsigned>(j)));
            if (qj > B / q) break;
            qj *= q;
        }
        multiply_local(c, q, a);
    }
    return c;
}

DirichletCoefficients z_series_coeffs(const ClmMeasure& measure, const ClassDatum& datum, const Character& phi,
                                      std::uint64_t B) {
    std::vector<unsigned> ranks;
    for (const auto& m : measure.ideals) ranks.push_back(measure.rank_of(m));
    return z_series_coeffs(measure.ideals, ranks, datum, phi, B);
}

DirichletCoefficients l_series_coeffs(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                                      const Character& phi, unsigned k, std::uint64_t B) {
    const std::uint64_t mod = series_modulus(phi);
    DirichletCoefficients c = dirichlet_one(B, mod);
    for (const auto& m : ideals) {
        std::uint64_t q = 0;
        if (!norm_at_most(m, B, q)) continue;
        const CycloElement chi = character_value(datum, phi, datum.class_of_ideal(m)) *
                                 Rational(Int(1), ipow(Int(q), k));
        std::vector<CycloElement> a{CycloElement(mod, Rational(1))};
        for (std::uint64_t qj = q;; qj *= q) {
            a.push_back(a.back() * chi);
            if (qj > B / q) break;
        }
        multiply_local(c, q, a);
    }
    return c;
}

IdentityCheck compare(const DirichletCoefficients& a, const DirichletCoefficients& b) {
    check_compatible(a, b);
    IdentityCheck out;
    out.bound = a.bound;
    for (std::uint64_t n = 1; n <= a.bound; ++n) {
        if (a.c[n] == b.c[n]) continue;
        ++out.mismatches;
        out.max_deviation = std::max(out.max_deviation, std::abs((a.c[n] - b.c[n]).to_complex()));
    }
    out.holds = out.mismatches == 0;
    return out;
}

IdentityCheck verify_analytic_identity(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                                       const Character& phi, unsigned u, std::uint64_t B) {
    const auto z = z_series_coeffs(ideals, std::vector<unsigned>(ideals.size(), u), datum, phi, B);
    DirichletCoefficients product = dirichlet_one(B, series_modulus(phi));
    for (unsigned k = 1; k <= u; ++k) product = dirichlet_convolve(product, l_series_coeffs(ideals, datum, phi, k, B));
    return compare(z, product);
}

IdentityCheck verify_product_identity(const std::vector<MaximalIdeal>& ideals, const ClassDatum& datum,
                                      const Character& phi, unsigned u, unsigned v, std::uint64_t B) {
    const std::size_t n = ideals.size();
    const auto zuv = z_series_coeffs(ideals, std::vector<unsigned>(n, u + v), datum, phi, B);
    const auto zu = z_series_coeffs(ideals, std::vector<unsigned>(n, u), datum, phi, B);
    const auto zv = z_series_coeffs(ideals, std::vector<unsigned>(n, v), datum, phi, B);
    return compare(zuv, dirichlet_convolve(zu, shift(zv, u)));
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

std::uint64_t hash_id(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return mix64(h ^ mix64(seed));
}

}  // namespace

ClassDatum seeded_datum(const GroupSpec& c, const std::vector<MaximalIdeal>& ideals, std::uint64_t seed) {
    ClassDatum datum;
    datum.group = c;
    for (const auto& m : ideals) {
        std::uint64_t h = hash_id(m.id(), seed);
        GroupElement g;
        for (std::uint64_t d : c.cyclic_orders) {
            g.push_back(h % d);
            h = mix64(h);
        }
        datum.ideal_class[m.id()] = g;
    }
    return datum;
}

std::vector<C58Point> c58_equidistribution_demo(const std::vector<std::uint64_t>& cutoffs,
                                                const std::vector<std::uint64_t>& phi_exponents, std::uint64_t seed) {
    if (phi_exponents.size() != 3) throw std::invalid_argument("c58 demo: phi is a character of (Z/2)^3");
    std::vector<std::uint64_t> sorted = cutoffs;
    std::sort(sorted.begin(), sorted.end());
    const GroupSpec g58 = build_group({58});
    const auto comps = components(g58);
    const auto comp = *std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.n == 29; });
    std::vector<std::uint64_t> primes;
    for (auto p : arith::primes_up_to(sorted.empty() ? 0 : sorted.back()))
        if (p != 2 && p != 29) primes.push_back(p);
    const auto ideals = maximal_ideals(comp, primes, g58.order);
    const GroupSpec c = build_group({2, 2, 2});
    const ClassDatum datum = seeded_datum(c, ideals, seed);
    const bool trivial = std::all_of(phi_exponents.begin(), phi_exponents.end(), [](auto a) { return a % 2 == 0; });

    std::vector<C58Point> out;
    long double sum = 0.0L, tail = 0.0L;
    std::size_t next = 0;
    for (std::uint64_t cutoff : sorted) {
        while (next < ideals.size() && ideals[next].p <= cutoff) {
            const auto& m = ideals[next++];
            const GroupElement& cls = datum.class_of_ideal(m);
            std::uint64_t pairing = 0;
            for (std::size_t i = 0; i < 3; ++i) pairing += (phi_exponents[i] % 2) * cls[i];
            if (trivial || pairing % 2 == 0) continue;
            // phi = -1 here: log prod_k (1 - x^k)/(1 + x^k), x = 1/Nm.
            const long double q = m.norm.convert_to<long double>();
            long double xk = 1.0L;
            unsigned k = 0;
            do {
                ++k;
                xk /= q;
                sum += std::log1p(-xk) - std::log1p(xk);
            } while (xk > 1e-25L && k < 200);
            // |log((1-x)/(1+x))| <= 8x/3 for x <= 1/2, summed over the remaining k.
            tail += 8.0L / 3.0L * xk / (q - 1.0L);
        }
        C58Point pt;
        pt.cutoff = cutoff;
        pt.ideals = next;
        const long double slack = 1e-15L * (1.0L + std::fabs(sum));
        pt.log_upper = static_cast<double>(sum + slack);
        pt.log_lower = static_cast<double>(sum - tail - slack);
        if (trivial) pt.log_lower = pt.log_upper = 0.0;
        pt.ratio_lower = std::exp(pt.log_lower);
        pt.ratio_upper = trivial ? 1.0 : std::min(1.0, std::exp(pt.log_upper));
        out.push_back(pt);
    }
    return out;
}

}  // namespace clm
