#include "clm/quartic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "clm/arith.hpp"

namespace clm {

namespace {

constexpr std::uint64_t kMaxX = 1'000'000'000'000ULL;
constexpr long double kNudge = 1e-12L;

bool all_one_mod_four_squarefree(std::uint64_t m) {
    for (const auto& [p, e] : arith::factorize(m))
        if (e > 1 || p % 4 != 1) return false;
    return true;
}

std::uint64_t pow2(unsigned alpha) { return std::uint64_t{1} << alpha; }

// Odd squarefree a <= y, coprime to m.
class GammaCounter {
public:
    explicit GammaCounter(std::uint64_t ymax) : sqfree_(ymax + 1, true) {
        for (std::uint64_t p = 2; p * p <= ymax; ++p)
            for (std::uint64_t k = p * p; k <= ymax; k += p * p) sqfree_[k] = false;
    }

    std::uint64_t operator()(std::uint64_t y, std::uint64_t m) const {
        std::uint64_t count = 0;
        for (std::uint64_t a = 1; a <= y; a += 2)
            if (sqfree_[a] && std::gcd(a, m) == 1) ++count;
        return count;
    }

private:
    std::vector<bool> sqfree_;
};

struct Branch {
    unsigned alpha;
    std::uint64_t weight_num;  // h(n) = weight_num * sigma0(d') / 2
};

constexpr Branch kOddBranches[] = {{0, 1}, {4, 1}, {6, 2}};
constexpr Branch kEvenBranch = {11, 4};

// Calls f(d', branch, a_max) for every family with 2^alpha d'^3 <= x.
template <typename F>
void for_each_family(std::uint64_t x, F&& f) {
    const std::uint64_t dmax = arith::icbrt(x);
    for (std::uint64_t dp = 1; dp <= dmax; ++dp) {
        if (dp % 2 == 0 || !all_one_mod_four_squarefree(dp)) continue;
        const std::uint64_t cube = dp * dp * dp;
        if (dp > 1)
            for (const auto& br : kOddBranches) {
                const std::uint64_t m = pow2(br.alpha) * cube;
                if (m <= x) f(dp, br, arith::isqrt(x / m));
            }
        const std::uint64_t m = pow2(kEvenBranch.alpha) * cube;
        if (m <= x) f(dp, kEvenBranch, arith::isqrt(x / m));
    }
}

}  // namespace

std::uint64_t QuarticDisc::n() const {
    std::uint64_t v = pow2(alpha);
    for (std::uint64_t f : {d_prime, d_prime, d_prime, a, a}) {
        if (f != 0 && v > UINT64_MAX / f) throw std::overflow_error("quartic discriminant overflows");
        v *= f;
    }
    return v;
}

std::uint64_t QuarticDisc::quadratic_discriminant() const { return alpha == 11 ? 8 * d_prime : d_prime; }

bool is_admissible(const QuarticDisc& disc) {
    if (disc.alpha != 0 && disc.alpha != 4 && disc.alpha != 6 && disc.alpha != 11) return false;
    if (disc.d_prime == 0 || disc.a == 0) return false;
    if (disc.alpha != 11 && disc.d_prime == 1) return false;
    if (disc.d_prime % 2 == 0 || !all_one_mod_four_squarefree(disc.d_prime)) return false;
    if (disc.a % 2 == 0 || !arith::is_squarefree(disc.a) || std::gcd(disc.a, disc.d_prime) != 1) return false;
    return true;
}

std::optional<QuarticDisc> decompose_quartic_disc(std::uint64_t n) {
    if (n == 0) return std::nullopt;
    QuarticDisc disc;
    disc.alpha = static_cast<unsigned>(std::countr_zero(n));
    const std::uint64_t odd = n >> disc.alpha;
    for (const auto& [p, e] : arith::factorize(odd)) {
        if (e == 3)
            disc.d_prime *= p;
        else if (e == 2)
            disc.a *= p;
        else
            return std::nullopt;
    }
    if (!is_admissible(disc)) return std::nullopt;
    return disc;
}

std::uint64_t h_of_disc(const QuarticDisc& disc) {
    if (!is_admissible(disc)) throw std::invalid_argument("inadmissible cyclic quartic discriminant");
    const std::uint64_t s = arith::sigma0(disc.d_prime);
    switch (disc.alpha) {
        case 11: return 2 * s;
        case 6: return s;
        default: return s / 2;
    }
}

std::uint64_t count_fields(std::uint64_t x, std::optional<std::int64_t> d) {
    if (x > kMaxX) throw std::invalid_argument("count_fields: x exceeds 10^12");
    std::optional<std::uint64_t> want_dp;
    bool want_even = false;
    if (d) {
        if (!is_fundamental_discriminant(*d)) throw std::invalid_argument("count_fields: d is not fundamental");
        if (subfield_weight(*d) == 0.0) return 0;
        const auto ud = static_cast<std::uint64_t>(*d);
        want_even = ud % 2 == 0;
        want_dp = want_even ? ud / 8 : ud;
    }
    if (x < 125) return 0;
    const GammaCounter gamma(arith::isqrt(x / 125) + 1);
    std::uint64_t total = 0;
    for_each_family(x, [&](std::uint64_t dp, const Branch& br, std::uint64_t amax) {
        if (want_dp && (dp != *want_dp || (br.alpha == 11) != want_even)) return;
        total += br.weight_num * arith::sigma0(dp) * gamma(amax, dp) / 2;
    });
    return total;
}

std::vector<std::uint64_t> quartic_subfield_discriminants(std::uint64_t D) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t dp = 1; dp <= D; dp += 2) {
        const bool odd_ok = dp > 1;
        const bool even_ok = dp <= D / 8;
        if (!odd_ok && !even_ok) continue;
        if (!all_one_mod_four_squarefree(dp)) continue;
        if (odd_ok) out.push_back(dp);
        if (even_ok) out.push_back(8 * dp);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TBracket t_constant(std::uint64_t P) {
    if (P < 10'000) throw std::invalid_argument("t_constant: P must be at least 10^4");
    long double log_sum = 0;
    for (std::uint32_t p : arith::primes_up_to(P)) {
        if (p % 4 != 1) continue;
        const long double lp = p;
        log_sum += std::log1p(2.0L / ((lp + 1.0L) * std::sqrt(lp)));
    }
    const long double tail = 4.0L / std::sqrt(static_cast<long double>(P));
    const long double factor = (24.0L + std::sqrt(2.0L)) / 24.0L;
    TBracket out;
    out.P = P;
    out.t.lower = static_cast<double>(std::exp(log_sum) * factor * (1 - kNudge) - 1.0L);
    out.t.upper = static_cast<double>(std::exp(log_sum + tail) * factor * (1 + kNudge) - 1.0L);
    return out;
}

double subfield_weight(std::int64_t d) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument("subfield_weight: d is not fundamental");
    if (d < 0) return 0.0;
    long double denom = 1;
    const auto fs = arith::factorize(static_cast<std::uint64_t>(d));
    for (const auto& [p, e] : fs) {
        if (p % 4 == 3) return 0.0;
        const long double lp = static_cast<long double>(p);
        denom *= (lp + 1) * std::sqrt(lp);
    }
    if (d % 2 == 0) denom *= 16;
    return static_cast<double>(static_cast<long double>(arith::sigma0(static_cast<std::uint64_t>(d))) / denom);
}

Bracket p_k_limit(std::int64_t d, const TBracket& t) {
    const long double c = subfield_weight(d);
    return {static_cast<double>(c / t.t.upper * (1 - kNudge)), static_cast<double>(c / t.t.lower * (1 + kNudge))};
}

DensityBracket density_bracket(std::uint64_t D, const TBracket& t, const FormClassTable& table) {
    DensityBracket out;
    out.D = D;
    long double a = 0, b = 0;
    for (std::uint64_t d : quartic_subfield_discriminants(D)) {
        const long double c = subfield_weight(static_cast<std::int64_t>(d));
        const bool div3 = table.at(static_cast<std::int64_t>(d)).h_narrow % 3 == 0;
        b += c;
        ++out.subfields;
        if (div3)
            ++out.subfields_div3;
        else
            a += c;
    }
    out.weight_not_div3 = static_cast<double>(a);
    out.weight_total = static_cast<double>(b);
    const long double t_hi = t.t.upper, t_lo = t.t.lower;
    out.lower = static_cast<double>(a / t_hi * (1 - kNudge));
    out.upper = static_cast<double>(std::min(1.0L, (1 - (b - a) / t_hi) * (1 + kNudge)));
    out.mass_lower = static_cast<double>(b / t_hi * (1 - kNudge));
    out.mass_upper = static_cast<double>(b / t_lo * (1 + kNudge));
    return out;
}

EmpiricalDensity empirical_density(std::uint64_t x, const FormClassTable& table) {
    if (x > kMaxX) throw std::invalid_argument("empirical_density: x exceeds 10^12");
    EmpiricalDensity out;
    out.x = x;
    if (x < 125) return out;
    const GammaCounter gamma(arith::isqrt(x / 125) + 1);
    for_each_family(x, [&](std::uint64_t dp, const Branch& br, std::uint64_t amax) {
        const std::uint64_t count = br.weight_num * arith::sigma0(dp) * gamma(amax, dp) / 2;
        if (count == 0) return;
        const auto d = static_cast<std::int64_t>(br.alpha == 11 ? 8 * dp : dp);
        out.fields += count;
        if (table.at(d).h_narrow % 3 != 0) out.fields_not_div3 += count;
    });
    return out;
}

}  // namespace clm
