#include <doctest.h>

#include <cmath>

#include "clm/abelian.hpp"
#include "clm/measure.hpp"
#include "clm/pipelines.hpp"

using namespace clm;

namespace {

ClmMeasure single_ideal(std::uint64_t p, unsigned u) {
    const GroupSpec g = build_group({1});
    const auto comps = components(g);
    return make_measure(g, comps, {p}, {{comps.front().id, u}});
}

}  // namespace

TEST_CASE("local normalizer") {
    const Interval z = local_normalizer(2, 0, Rational(1, Int(1) << 40));
    CHECK(z.lo >= Rational(346, 100));
    CHECK(z.hi <= Rational(347, 100));
    CHECK(z.width() / z.lo < Rational(2, Int(1) << 40));
    Rational prev = z.hi;
    for (unsigned u = 1; u <= 30; ++u) {
        const Interval c = local_normalizer(2, u, Rational(1, Int(1) << 40));
        CHECK(c.hi <= prev);
        CHECK(c.lo >= 1);
        prev = c.hi;
    }
    CHECK(prev - 1 < Rational(1, 1000000));

    const Interval closed = local_normalizer(3, 1, Rational(1, Int(1) << 50));
    const Interval direct = partition_sum_bracket(3, 1, 12);
    CHECK(closed.lo <= direct.hi);
    CHECK(direct.lo <= closed.hi);
}

TEST_CASE("rank tail bound") {
    // mass of partitions with exactly r parts is at most q^{-r^2-ur} / c_q^2
    for (int q : {2, 3, 5}) {
        const Rational c = eta_infinity_lower(q);
        for (unsigned u = 0; u <= 3; ++u) {
            Rational total = 0;
            for (unsigned r = 0; r <= 12; ++r) {
                const Rational m = length_mass(q, u, r);
                CHECK(m <= rpow(Rational(q), -static_cast<std::int64_t>(r * r + u * r)) / (c * c));
                total += m;
            }
            const Interval z = local_normalizer(q, u, Rational(1, Int(1) << 40));
            CHECK(total <= z.hi);
            CHECK(z.lo - total < Rational(1, 1000000));
        }
    }
}

TEST_CASE("shape mass and probability") {
    const ClmMeasure m = single_ideal(3, 1);
    CHECK(shape_mass(ModuleShape{}, m) == 1);
    ModuleShape zero;
    zero.ranks = m.ranks;
    const Interval p0 = probability(zero, m);
    CHECK(p0.lo == 1 / m.total_normalizer.hi);
    ModuleShape e;
    e.torsion[m.ideals[0]] = Partition{2, 1};
    ModuleShape with_free = e;
    with_free.ranks = m.ranks;
    const Interval a = probability(with_free, m), b = probability_finite(e, m);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    CHECK(probability(e, m).hi == 0);
    CHECK_THROWS(make_measure(build_group({6}), components(build_group({6})), {3}, {}));
}

TEST_CASE("sampler") {
    const ClmMeasure m = single_ideal(3, 0);
    const auto a = sample_shapes(m, 5, 3000);
    const auto b = sample_shapes(m, 5, 3000);
    const auto c = sample_shapes_serial(m, 5, 3000);
    CHECK(a == b);
    CHECK(a == c);

    const ClmMeasure big_u = single_ideal(3, 40);
    std::size_t zeros = 0;
    for (const auto& s : sample_shapes(big_u, 1, 10000)) zeros += s.is_torsion_zero();
    CHECK(zeros > 9990);

    const std::size_t n = 100000;
    zeros = 0;
    for (const auto& s : sample_shapes(m, 2, n)) zeros += s.is_torsion_zero();
    const double p = to_double(1 / m.total_normalizer.lo);
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::fabs(static_cast<double>(zeros) / n - p) < 3 * sigma);
}

TEST_CASE("expectation brackets") {
    const ClmMeasure m = single_ideal(3, 1);
    const BoundedFunction one{[](const ModuleShape&) { return Rational(1); }, 0, 1};
    const ExpectationBracket e1 = expectation_bracket(one, m);
    CHECK(e1.contains(1));
    CHECK(e1.residual < Rational(1, Int(1) << 40));
    CHECK(e1.upper - e1.lower >= e1.residual);
    CHECK(e1.upper - e1.lower < 3 * e1.residual + Rational(1, Int(1) << 40));

    const BoundedFunction zero_ind{[](const ModuleShape& s) { return Rational(s.is_torsion_zero() ? 1 : 0); }, 0, 1};
    const ExpectationBracket ez = expectation_bracket(zero_ind, m);
    CHECK(ez.lower <= 1 / m.total_normalizer.lo);
    CHECK(1 / m.total_normalizer.hi <= ez.upper);

    const auto heur = heuristic_quartic_expectation();
    CHECK(heur.ok);
    CHECK(std::fabs(heur.result.at("value").get<double>() - 0.8402) < 5e-5);

    const BoundedFunction liar{[](const ModuleShape&) { return Rational(2); }, 0, 1};
    CHECK_THROWS(expectation_bracket(liar, m));
}

TEST_CASE("surjection moments") {
    const ClmMeasure m0 = single_ideal(5, 0);
    const ClmMeasure m1 = single_ideal(5, 1);
    CHECK(surjection_moment_check(ModuleShape{}, m0).contains(1));
    ModuleShape a;
    a.torsion[m0.ideals[0]] = Partition{1};
    CHECK(surjection_moment_check(a, m0).contains(1));
    CHECK(surjection_moment_check(a, m1).contains(Rational(1, 5)));
    CHECK(sur_to_module(Partition{1, 1}, Partition{1}, 3) == 8);
    ModuleShape huge;
    huge.torsion[m0.ideals[0]] = Partition{6};
    CHECK_THROWS(surjection_moment_check(huge, m0));
}

TEST_CASE("truncation shape demo") {
    const auto first = truncation_shape_demo(1, 1'000'000);
    const auto second = truncation_shape_demo(1'000'000, 1);
    const auto equal = truncation_shape_demo(1000, 1000);
    CHECK(first.ratio < 0.05);
    CHECK(second.ratio > 0.95);
    CHECK(equal.ratio > 0);
    CHECK(equal.ratio < 1);
}
