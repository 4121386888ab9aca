#include "clm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clm/arith.hpp"
#include "clm/module_oracle.hpp"

namespace clm {

namespace {

constexpr unsigned kMaxTruncation = 24;
constexpr std::size_t kMaxShapes = 2'000'000;

Rational inv_pow(const Int& q, std::uint64_t k) { return Rational(Int(1), ipow(q, k)); }

// Interval product for positive intervals.
Interval mul(const Interval& a, const Interval& b) { return {a.lo * b.lo, a.hi * b.hi}; }

}  // namespace

Rational eta(const Int& q, unsigned k) {
    Rational out = 1;
    for (unsigned i = 1; i <= k; ++i) out *= 1 - inv_pow(q, i);
    return out;
}

Rational eta_infinity_lower(const Int& q) { return 1 - Rational(Int(1), q) - inv_pow(q, 2); }

Interval local_normalizer(const Int& q, unsigned u, const Rational& tol) {
    if (q < 2) throw std::invalid_argument("local_normalizer: q < 2");
    if (tol <= 0) throw std::invalid_argument("local_normalizer: tol must be positive");
    Rational lo = 1;
    std::uint64_t k = u;
    Rational rem;
    do {
        ++k;
        const Int qk = ipow(q, k);
        lo *= Rational(qk, qk - 1);
        // prod_{j > k}(1 - q^{-j}) >= 1 - sum_{j > k} q^{-j} = 1 - q^{-k}/(q - 1)
        rem = Rational(Int(1), qk * (q - 1));
    } while (rem >= tol || rem >= Rational(1, 2));
    return {lo, lo / (1 - rem)};
}

Interval partition_sum_bracket(const Int& q, unsigned u, unsigned n) {
    Rational sum = 0;
    for (unsigned s = 0; s <= n; ++s) {
        Rational level = 0;
        for (const auto& lam : partitions_of(s)) level += Rational(Int(1), aut_count(lam, q));
        sum += level * inv_pow(q, static_cast<std::uint64_t>(u) * s);
    }
    // The sizes s > n carry q^{-(u+1)s}/eta_s in total.
    const Rational x = inv_pow(q, u + 1);
    const Rational tail = rpow(x, n + 1) / ((1 - x) * eta_infinity_lower(q));
    return {sum, sum + tail};
}

unsigned ClmMeasure::rank_of(const MaximalIdeal& m) const {
    auto it = ranks.find(m.component);
    return it == ranks.end() ? 0 : it->second;
}

ClmMeasure make_measure(const GroupSpec& group, const std::vector<GroupComponent>& components,
                        const std::vector<std::uint64_t>& primes, const std::map<int, unsigned>& ranks,
                        const Rational& tol) {
    ClmMeasure m;
    m.group = group;
    m.primes = primes;
    std::sort(m.primes.begin(), m.primes.end());
    m.primes.erase(std::unique(m.primes.begin(), m.primes.end()), m.primes.end());
    m.components = components;
    for (const auto& [c, u] : ranks) {
        if (std::none_of(components.begin(), components.end(), [&](const auto& x) { return x.id == c; }))
            throw std::invalid_argument("rank given for unknown component " + std::to_string(c));
        if (u > 0) m.ranks[c] = u;
    }
    m.total_normalizer = {1, 1};
    for (const auto& comp : components) {
        for (auto& ideal : maximal_ideals(comp, m.primes, group.order)) {
            const Interval n = local_normalizer(ideal.norm, m.rank_of(ideal), tol);
            m.total_normalizer = mul(m.total_normalizer, n);
            m.normalizers.push_back(n);
            m.ideals.push_back(std::move(ideal));
        }
    }
    return m;
}

Rational shape_mass(const ModuleShape& shape, const ClmMeasure& measure) {
    Rational mass = 1;
    for (const auto& [ideal, lam] : shape.torsion) {
        if (lam.empty()) continue;
        if (!std::binary_search(measure.ideals.begin(), measure.ideals.end(), ideal))
            throw std::invalid_argument("shape uses ideal " + ideal.id() + " outside the measure");
        const std::uint64_t u = measure.rank_of(ideal);
        mass /= ipow(ideal.norm, u * lam.size()) * aut_count(lam, ideal.norm);
    }
    return mass;
}

namespace {

Interval divide_by_normalizer(const Rational& mass, const ClmMeasure& measure) {
    return {mass / measure.total_normalizer.hi, mass / measure.total_normalizer.lo};
}

}  // namespace

Interval probability(const ModuleShape& m, const ClmMeasure& measure) {
    ModuleShape n = m;
    n.normalize();
    if (n.ranks != measure.ranks) return {0, 0};
    return divide_by_normalizer(shape_mass(n, measure), measure);
}

Interval probability_finite(const ModuleShape& e, const ClmMeasure& measure) {
    ModuleShape n = e;
    n.normalize();
    if (!n.ranks.empty()) throw std::invalid_argument("probability_finite: module is not finite");
    for (const auto& [ideal, lam] : n.torsion)
        if (!std::binary_search(measure.ideals.begin(), measure.ideals.end(), ideal))
            throw std::invalid_argument("shape uses ideal " + ideal.id() + " outside the measure");
    const Rational mass(Int(1), hom_from_projective(measure.ranks, n) * aut_torsion(n));
    return divide_by_normalizer(mass, measure);
}

std::mt19937_64 task_stream(std::uint64_t seed, std::uint64_t task) {
    auto splitmix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31U);
    };
    return std::mt19937_64(splitmix(splitmix(seed) ^ (task * 0xd1342543de82ef95ULL + 1)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

ShapeSampler::ShapeSampler(const ClmMeasure& measure) : measure_(&measure) {
    for (std::size_t i = 0; i < measure.ideals.size(); ++i) {
        Local l;
        l.q = measure.ideals[i].norm.convert_to<long double>();
        l.u = measure.rank_of(measure.ideals[i]);
        const auto& n = measure.normalizers[i];
        l.normalizer = ((n.lo + n.hi) / 2).convert_to<long double>();
        extend(l);
        local_.push_back(std::move(l));
    }
}

void ShapeSampler::extend(Local& l) {
    // P(s) = q^{-(u+1)s} / (eta_s N). The first call covers all but 2^-60 of the mass,
    // later calls (overflow path) add 16 more lengths.
    auto s = static_cast<unsigned>(l.size_cdf.size());
    if (s > 400) return;
    const bool first = s == 0;
    const long double x = std::pow(l.q, -static_cast<long double>(l.u + 1));
    long double cdf = first ? 0.0L : l.size_cdf.back();
    long double term = size_probability_raw(l, s);
    const unsigned stop = s + 16;
    while (true) {
        cdf += term;
        l.size_cdf.push_back(cdf);
        ++s;
        term *= x / (1.0L - std::pow(l.q, -static_cast<long double>(s)));
        if (term == 0.0L || s > 400) break;
        if (first ? 1.0L - cdf < 0x1.0p-60L : s >= stop) break;
    }
}

long double ShapeSampler::size_probability_raw(const Local& l, unsigned s) {
    long double term = 1.0L / l.normalizer;
    const long double x = std::pow(l.q, -static_cast<long double>(l.u + 1));
    for (unsigned i = 1; i <= s; ++i) term *= x / (1.0L - std::pow(l.q, -static_cast<long double>(i)));
    return term;
}

long double ShapeSampler::size_probability(std::size_t ideal, unsigned s) const {
    return size_probability_raw(local_.at(ideal), s);
}

const std::pair<std::vector<Partition>, std::vector<long double>>& ShapeSampler::within(std::size_t ideal,
                                                                                       unsigned s) {
    auto key = std::make_pair(ideal, s);
    auto it = within_.find(key);
    if (it != within_.end()) return it->second;
    auto parts = partitions_of(s);
    std::vector<long double> cdf;
    long double acc = 0;
    const Int& q = measure_->ideals[ideal].norm;
    for (const auto& lam : parts) {
        acc += 1.0L / aut_count(lam, q).convert_to<long double>();
        cdf.push_back(acc);
    }
    for (auto& c : cdf) c /= acc;
    return within_.emplace(key, std::make_pair(std::move(parts), std::move(cdf))).first->second;
}

ModuleShape ShapeSampler::draw(std::mt19937_64& rng) {
    ModuleShape out;
    for (std::size_t i = 0; i < local_.size(); ++i) {
        Local& l = local_[i];
        const long double v = uniform01(rng);
        auto pos = std::upper_bound(l.size_cdf.begin(), l.size_cdf.end(), v);
        while (pos == l.size_cdf.end()) {
            // Overflow path: the draw fell in the residual tail.
            const std::size_t before = l.size_cdf.size();
            extend(l);
            if (l.size_cdf.size() == before) {
                pos = l.size_cdf.end() - 1;
                break;
            }
            pos = std::upper_bound(l.size_cdf.begin(), l.size_cdf.end(), v);
        }
        const auto s = static_cast<unsigned>(pos - l.size_cdf.begin());
        if (s == 0) continue;
        const auto& [parts, cdf] = within(i, s);
        const long double w = uniform01(rng);
        auto j = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), w) - cdf.begin());
        if (j >= parts.size()) j = parts.size() - 1;
        out.torsion[measure_->ideals[i]] = parts[j];
    }
    out.ranks = measure_->ranks;
    return out;
}

ModuleShape sample_shape(const ClmMeasure& measure, std::uint64_t seed) {
    ShapeSampler sampler(measure);
    auto rng = task_stream(seed, 0);
    return sampler.draw(rng);
}

std::vector<ModuleShape> sample_shapes_serial(const ClmMeasure& measure, std::uint64_t seed, std::size_t count,
                                              std::size_t block_size) {
    std::vector<ModuleShape> out(count);
    const std::size_t blocks = (count + block_size - 1) / block_size;
    for (std::size_t b = 0; b < blocks; ++b) {
        ShapeSampler sampler(measure);
        auto rng = task_stream(seed, b);
        for (std::size_t i = b * block_size; i < std::min(count, (b + 1) * block_size); ++i) out[i] = sampler.draw(rng);
    }
    return out;
}

std::vector<ModuleShape> sample_shapes(const ClmMeasure& measure, std::uint64_t seed, std::size_t count,
                                       std::size_t block_size) {
    std::vector<ModuleShape> out(count);
    const auto blocks = static_cast<std::int64_t>((count + block_size - 1) / block_size);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < blocks; ++b) {
        ShapeSampler sampler(measure);
        auto rng = task_stream(seed, static_cast<std::uint64_t>(b));
        const std::size_t begin = static_cast<std::size_t>(b) * block_size;
        for (std::size_t i = begin; i < std::min(count, begin + block_size); ++i) out[i] = sampler.draw(rng);
    }
    return out;
}

std::vector<ModuleShape> torsion_shapes_up_to(const ClmMeasure& measure, unsigned N) {
    std::vector<std::vector<Partition>> by_size;
    for (unsigned s = 0; s <= N; ++s) by_size.push_back(partitions_of(s));
    std::vector<ModuleShape> out;
    ModuleShape cur;
    cur.ranks = measure.ranks;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned budget) {
        if (i == measure.ideals.size()) {
            if (out.size() >= kMaxShapes) throw std::invalid_argument("truncation enumerates too many shapes");
            ModuleShape m = cur;
            m.normalize();
            out.push_back(std::move(m));
            return;
        }
        for (unsigned s = 0; s <= budget; ++s) {
            for (const auto& lam : by_size[s]) {
                cur.torsion[measure.ideals[i]] = lam;
                rec(i + 1, budget - s);
            }
        }
        cur.torsion.erase(measure.ideals[i]);
    };
    rec(0, N);
    return out;
}

Rational residual_bound(const ClmMeasure& measure, unsigned N) {
    // Exact distribution of the total length, convolved over ideals, against the upper normalizer.
    std::vector<Rational> conv(N + 1, 0);
    conv[0] = 1;
    for (std::size_t i = 0; i < measure.ideals.size(); ++i) {
        const Int& q = measure.ideals[i].norm;
        const unsigned u = measure.rank_of(measure.ideals[i]);
        std::vector<Rational> local(N + 1);
        Rational term = 1;
        const Rational x = inv_pow(q, u + 1);
        for (unsigned s = 0; s <= N; ++s) {
            local[s] = term;
            term *= x / (1 - inv_pow(q, s + 1));
        }
        std::vector<Rational> next(N + 1, 0);
        for (unsigned a = 0; a <= N; ++a)
            for (unsigned b = 0; a + b <= N; ++b) next[a + b] += conv[a] * local[b];
        conv = std::move(next);
    }
    Rational covered = 0;
    for (const auto& c : conv) covered += c;
    const Rational r = 1 - covered / measure.total_normalizer.hi;
    return r < 0 ? Rational(0) : r;
}

ExpectationBracket expectation_bracket(const BoundedFunction& f, const ClmMeasure& measure, unsigned N) {
    if (!f.f) throw std::invalid_argument("expectation_bracket: no function supplied");
    if (f.lower > f.upper) throw std::invalid_argument("expectation_bracket: bound certificate is empty");
    if (N == 0) {
        const Rational target(1, Int(1) << 50);
        N = 1;
        while (N < kMaxTruncation && residual_bound(measure, N) >= target) ++N;
    }
    Rational weighted = 0;  // sum (f - a) * mass
    Rational total = 0;     // sum mass
    for (const auto& shape : torsion_shapes_up_to(measure, N)) {
        const Rational value = f.f(shape);
        if (value < f.lower || value > f.upper) throw std::logic_error("function exceeds its bound certificate");
        const Rational mass = shape_mass(shape, measure);
        weighted += (value - f.lower) * mass;
        total += mass;
    }
    ExpectationBracket out;
    out.truncation = N;
    out.residual = 1 - total / measure.total_normalizer.hi;
    out.lower = f.lower + weighted / measure.total_normalizer.hi;
    out.upper = f.lower + weighted / measure.total_normalizer.lo + (f.upper - f.lower) * out.residual;
    return out;
}

namespace {

// Subgroups B with pA <= B <= A for A of type a over Z/p: each is the preimage of a
// subspace W of A/pA, contributing mu(B, A) = (-1)^k p^{k(k-1)/2}, k = codim W.
std::vector<std::pair<Partition, Int>> sur_expansion(const Partition& a, std::uint64_t p) {
    const oracle::PGroup big(a, p);
    const std::size_t r = a.length();
    if (r > 8) throw std::invalid_argument("surjection moments: A/pA too large");
    Partition elementary;
    elementary.parts.assign(r, 1);
    const oracle::PGroup top(elementary, p);
    // Reduction A -> A/pA in mixed-radix codes.
    std::vector<std::uint32_t> reduce(big.order());
    {
        std::vector<std::uint32_t> mods;
        for (unsigned l : a.parts) mods.push_back(static_cast<std::uint32_t>(arith::checked_pow(p, l)));
        for (std::uint32_t x = 0; x < big.order(); ++x) {
            std::uint32_t y = x, code = 0, scale = 1;
            for (auto m : mods) {
                code += static_cast<std::uint32_t>((y % m) % p) * scale;
                y /= m;
                scale *= static_cast<std::uint32_t>(p);
            }
            reduce[x] = code;
        }
    }
    // Breadth-first enumeration of subspaces of A/pA.
    std::vector<std::vector<bool>> subspaces;
    std::map<std::vector<bool>, bool> seen;
    std::vector<bool> zero(top.order(), false);
    zero[0] = true;
    subspaces.push_back(zero);
    seen[zero] = true;
    for (std::size_t i = 0; i < subspaces.size(); ++i) {
        for (std::uint32_t x = 0; x < top.order(); ++x) {
            if (subspaces[i][x]) continue;
            auto next = top.closure(subspaces[i], x);
            if (seen.emplace(next, true).second) subspaces.push_back(std::move(next));
            if (subspaces.size() > 100000) throw std::invalid_argument("surjection moments: too many subgroups");
        }
    }
    std::map<Partition, Int> terms;
    const unsigned e = a.empty() ? 0 : a.parts.front();
    for (const auto& w : subspaces) {
        unsigned dim = 0;
        for (auto n = static_cast<std::uint64_t>(std::count(w.begin(), w.end(), true)); n > 1; n /= p) ++dim;
        // Type of B from #{x in B : p^k x = 0}.
        std::vector<std::uint64_t> killed(e + 1, 0);
        for (std::uint32_t x = 0; x < big.order(); ++x) {
            if (!w[reduce[x]]) continue;
            for (unsigned k = big.order_exponent(x); k <= e; ++k) ++killed[k];
        }
        std::vector<unsigned> conj;
        for (unsigned k = 1; k <= e; ++k) {
            std::uint64_t ratio = killed[k] / killed[k - 1];
            unsigned c = 0;
            while (ratio > 1) {
                ratio /= p;
                ++c;
            }
            if (c > 0) conj.push_back(c);
        }
        Partition type;
        for (unsigned i = 0; !conj.empty() && i < conj.front(); ++i) {
            unsigned part = 0;
            for (unsigned c : conj) part += c > i;
            type.parts.push_back(part);
        }
        const unsigned k = static_cast<unsigned>(r) - dim;
        Int mu = ipow(Int(p), k == 0 ? 0 : static_cast<std::uint64_t>(k) * (k - 1) / 2);
        if (k % 2 == 1) mu = -mu;
        terms[type] += mu;
    }
    std::vector<std::pair<Partition, Int>> out;
    for (auto& [t, c] : terms)
        if (c != 0) out.emplace_back(t, c);
    return out;
}

Int apply_expansion(const std::vector<std::pair<Partition, Int>>& exp, const Partition& lambda, const Int& q) {
    Int total = 0;
    for (const auto& [type, mu] : exp) total += mu * hom_count(lambda, type, q);
    return total;
}

// H(r): mass of the column chains below a first column of height r.
std::vector<Rational> chain_masses(const Int& q, unsigned u, unsigned rmax) {
    std::vector<Rational> etas(rmax + 1);
    for (unsigned k = 0; k <= rmax; ++k) etas[k] = eta(q, k);
    std::vector<Rational> h(rmax + 1);
    h[0] = 1;
    for (unsigned r = 1; r <= rmax; ++r) {
        Rational acc = 1 / etas[r];
        for (unsigned c = 1; c < r; ++c) acc += inv_pow(q, static_cast<std::uint64_t>(c) * (c + u)) * h[c] / etas[r - c];
        h[r] = acc / (1 - inv_pow(q, static_cast<std::uint64_t>(r) * (r + u)));
    }
    return h;
}

// sum over r > R of q^{a r - r^2 - u r} / c_q^2.
Rational length_tail(const Int& q, unsigned u, unsigned a, unsigned R) {
    const Rational c = eta_infinity_lower(q);
    Rational sum = 0;
    Rational last;
    for (unsigned r = R + 1; r <= R + 40; ++r) {
        const std::int64_t ex = static_cast<std::int64_t>(a) * r - static_cast<std::int64_t>(r) * r -
                                static_cast<std::int64_t>(u) * r;
        last = rpow(Rational(q), ex);
        sum += last;
    }
    // Beyond R + 40 successive ratios are at most q^{a - 2r - 1} <= 1/2.
    return (sum + 2 * last) / (c * c);
}

}  // namespace

Int sur_to_module(const Partition& lambda, const Partition& a, std::uint64_t q) {
    if (!arith::is_prime(q)) throw std::invalid_argument("sur_to_module: q must be prime");
    return apply_expansion(sur_expansion(a, q), lambda, Int(q));
}

Rational length_mass(const Int& q, unsigned u, unsigned r) {
    return inv_pow(q, static_cast<std::uint64_t>(r) * (r + u)) * chain_masses(q, u, r)[r];
}

ExpectationBracket surjection_moment_check(const ModuleShape& a, const ClmMeasure& measure) {
    ModuleShape target = a;
    target.normalize();
    if (!target.ranks.empty()) throw std::invalid_argument("surjection moments: A must be finite");
    if (target.torsion_order() > 10000) throw std::invalid_argument("surjection moments: A too large");
    Interval product{1, 1};
    unsigned used_R = 0;
    for (const auto& [ideal, alpha] : target.torsion) {
        auto it = std::lower_bound(measure.ideals.begin(), measure.ideals.end(), ideal);
        if (it == measure.ideals.end() || !(*it == ideal))
            throw std::invalid_argument("surjection moments: ideal outside the measure");
        if (ideal.residue_degree != 1) throw std::invalid_argument("surjection moments: ideal of non-prime norm");
        const Int& q = ideal.norm;
        const auto p = static_cast<std::uint64_t>(ideal.p);
        const unsigned u = measure.rank_of(ideal);
        const unsigned size = alpha.size();
        const unsigned e = alpha.parts.front();
        const Rational target_tail(1, Int(1) << 48);
        unsigned R = std::max(1U, size);
        while (length_tail(q, u, size, R) > target_tail) ++R;
        used_R = std::max(used_R, R);
        const auto exp = sur_expansion(alpha, p);
        const auto h = chain_masses(q, u, R);
        std::vector<Rational> etas(R + 1);
        for (unsigned k = 0; k <= R; ++k) etas[k] = eta(q, k);
        // Sum over capped types nu (parts <= e), indexed by conjugate columns r_1 >= ... >= r_e.
        Rational sum = 0;
        std::vector<unsigned> cols(e, 0);
        std::function<void(unsigned, unsigned, Rational)> rec = [&](unsigned k, unsigned cap, Rational weight) {
            if (k == e) {
                Partition nu;
                for (unsigned i = 0; i < cols[0]; ++i) {
                    unsigned part = 0;
                    for (unsigned c : cols) part += c > i;
                    nu.parts.push_back(part);
                }
                const Int s = apply_expansion(exp, nu, q);
                if (s != 0) sum += weight * s * h[cols[e - 1]];
                return;
            }
            for (unsigned c = 0; c <= cap; ++c) {
                cols[k] = c;
                Rational w = weight * inv_pow(q, static_cast<std::uint64_t>(c) * (c + u));
                if (k > 0) w /= etas[cols[k - 1] - c];
                rec(k + 1, c, w);
            }
        };
        rec(0, R, Rational(1));
        const auto idx = static_cast<std::size_t>(it - measure.ideals.begin());
        const Interval& n = measure.normalizers[idx];
        const Rational tail = length_tail(q, u, size, R);
        product = mul(product, Interval{sum / n.hi, (sum + tail) / n.lo});
    }
    ExpectationBracket out;
    out.lower = product.lo;
    out.upper = product.hi;
    out.truncation = used_R;
    out.residual = 0;
    return out;
}

TruncationDemo truncation_shape_demo(std::uint64_t b1, std::uint64_t b2) {
    if (b1 < 1 || b2 < 1) throw std::invalid_argument("truncation_shape_demo: cutoffs must be >= 1");
    const std::uint64_t b = std::max(b1, b2);
    if (b > 100'000'000) throw std::invalid_argument("truncation_shape_demo: cutoff too large");
    // W(n) = sum over modules of order n of 1/#Aut, multiplicative in n.
    std::vector<double> w(b + 1, 0.0);
    w[1] = 1.0;
    const arith::FactorTable table(static_cast<std::uint32_t>(b));
    std::map<std::pair<std::uint32_t, unsigned>, double> local;
    std::vector<std::pair<std::uint32_t, unsigned>> fac;
    for (std::uint32_t n = 2; n <= b; ++n) {
        table.factor(n, fac);
        double v = 1.0;
        for (const auto& pe : fac) {
            auto it = local.find(pe);
            if (it == local.end()) {
                Rational s = 0;
                for (const auto& lam : partitions_of(pe.second)) s += Rational(Int(1), aut_count(lam, Int(pe.first)));
                it = local.emplace(pe, to_double(s)).first;
            }
            v *= it->second;
        }
        w[n] = v;
    }
    std::vector<double> prefix(b + 1, 0.0);
    for (std::uint64_t n = 1; n <= b; ++n) prefix[n] = prefix[n - 1] + w[n];
    double num = 0.0;
    for (std::uint64_t a = 2; a <= b1; ++a) num += w[a] * prefix[std::min(a - 1, b2)];
    TruncationDemo out;
    out.mass_first = prefix[b1];
    out.mass_second = prefix[b2];
    out.ratio = num / (prefix[b1] * prefix[b2]);
    return out;
}

}  // namespace clm
