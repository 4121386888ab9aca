#pragma once

// The Cohen-Lenstra-Martinet measures P_V (finite modules) and P (modules P_V + M_0)
// restricted to a finite set S of primes, with certified normalizers.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "clm/abelian.hpp"
#include "clm/modules.hpp"
#include "clm/numeric.hpp"

namespace clm {

/// prod_{k > u} (1 - q^{-k})^{-1}, bracketed with relative width below tol.
Interval local_normalizer(const Int& q, unsigned u, const Rational& tol);

/// Lower bound for prod_{i >= 1}(1 - q^{-i}) (pentagonal bound 1 - 1/q - 1/q^2).
Rational eta_infinity_lower(const Int& q);

/// eta_k = prod_{i=1}^{k} (1 - q^{-i}), exact.
Rational eta(const Int& q, unsigned k);

/// Sum of q^{-u|lambda|}/#Aut(lambda) over |lambda| <= n by explicit enumeration,
/// widened by a certified bound on the remaining sizes.
Interval partition_sum_bracket(const Int& q, unsigned u, unsigned n);

struct ClmMeasure {
    GroupSpec group;
    std::vector<std::uint64_t> primes;
    std::vector<GroupComponent> components;
    std::map<int, unsigned> ranks;
    std::vector<MaximalIdeal> ideals;
    std::vector<Interval> normalizers;  // parallel to ideals
    Interval total_normalizer;

    unsigned rank_of(const MaximalIdeal& m) const;
};

/// Builds the measure on the given components (all of G, or the minus part).
/// Throws if some p divides #G; S must be an explicit finite list.
ClmMeasure make_measure(const GroupSpec& group, const std::vector<GroupComponent>& components,
                        const std::vector<std::uint64_t>& primes, const std::map<int, unsigned>& ranks,
                        const Rational& tol = Rational(1, Int(1) << 64));

/// Unnormalized mass prod_m q_m^{-u|lambda_m|} / #Aut(lambda_m) of the torsion part.
Rational shape_mass(const ModuleShape& m, const ClmMeasure& measure);

/// P(M) for M = P' + M_0; zero unless the rank vector of M matches the measure.
Interval probability(const ModuleShape& m, const ClmMeasure& measure);

/// P_V(E) for finite E, computed from #Hom(P_V, E) and #Aut E directly.
Interval probability_finite(const ModuleShape& e, const ClmMeasure& measure);

/// Deterministic 64-bit stream for (seed, task).
std::mt19937_64 task_stream(std::uint64_t seed, std::uint64_t task);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng);

/// Inverse-CDF sampler for P_V. Each ideal first draws the length |lambda| from its
/// closed-form distribution, then lambda given the length; tables grow on demand.
class ShapeSampler {
public:
    explicit ShapeSampler(const ClmMeasure& measure);
    ModuleShape draw(std::mt19937_64& rng);

    /// Probability that the length at ideal i equals s, as used by the sampler.
    long double size_probability(std::size_t ideal, unsigned s) const;

private:
    struct Local {
        long double q;
        unsigned u;
        long double normalizer;
        std::vector<long double> size_cdf;
    };
    const ClmMeasure* measure_;
    std::vector<Local> local_;
    std::map<std::pair<std::size_t, unsigned>, std::pair<std::vector<Partition>, std::vector<long double>>> within_;

    void extend(Local& l);
    static long double size_probability_raw(const Local& l, unsigned s);
    const std::pair<std::vector<Partition>, std::vector<long double>>& within(std::size_t ideal, unsigned s);
};

ModuleShape sample_shape(const ClmMeasure& measure, std::uint64_t seed);

/// count draws split into blocks of block_size, block b using task_stream(seed, b).
/// The result does not depend on the number of threads.
std::vector<ModuleShape> sample_shapes(const ClmMeasure& measure, std::uint64_t seed, std::size_t count,
                                       std::size_t block_size = 4096);
std::vector<ModuleShape> sample_shapes_serial(const ClmMeasure& measure, std::uint64_t seed, std::size_t count,
                                              std::size_t block_size = 4096);

/// f together with a certificate lower <= f <= upper.
struct BoundedFunction {
    std::function<Rational(const ModuleShape&)> f;
    Rational lower;
    Rational upper;
};

struct ExpectationBracket {
    Rational lower;
    Rational upper;
    unsigned truncation = 0;  // N: torsion shapes with total length <= N were summed
    Rational residual;        // certified upper bound on the unsummed probability

    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

/// Sums f * P over torsion shapes of total length <= N (N = 0 picks a default giving
/// residual < 2^-50, capped) and adds the certified tail.
ExpectationBracket expectation_bracket(const BoundedFunction& f, const ClmMeasure& measure, unsigned N = 0);

/// Certified upper bound on the probability of total length > N.
Rational residual_bound(const ClmMeasure& measure, unsigned N);

/// All torsion shapes of total length <= N over the measure's ideals.
std::vector<ModuleShape> torsion_shapes_up_to(const ClmMeasure& measure, unsigned N);

/// #Sur(M_lambda, A) over a prime field size q, by Moebius inversion on the lattice
/// of subgroups B with pA <= B <= A.
Int sur_to_module(const Partition& lambda, const Partition& a, std::uint64_t q);

/// Certified bracket for E[#Sur(X, A)] under P_V; A lives on ideals of prime norm.
ExpectationBracket surjection_moment_check(const ModuleShape& a, const ClmMeasure& measure);

/// Mass of all partitions whose conjugate has first column exactly r: q^{-(r^2+ur)} H(r).
Rational length_mass(const Int& q, unsigned u, unsigned r);

struct TruncationDemo {
    double ratio;            // sum w f / sum w over the box
    double mass_first;       // sum_{#M_1 <= B1} w
    double mass_second;      // sum_{#M_2 <= B2} w
};

/// Two rank-0 components of degree one, S = primes <= max(B1, B2), P = 0, and
/// f = 1{#(T (x) M) > #(T' (x) M)} summed over #M_1 <= B1, #M_2 <= B2.
TruncationDemo truncation_shape_demo(std::uint64_t b1, std::uint64_t b2);

}  // namespace clm
