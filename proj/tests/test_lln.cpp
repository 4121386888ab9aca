#include <doctest.h>

#include <cmath>

#include "clm/lln.hpp"
#include "clm/pipelines.hpp"

using namespace clm;

TEST_CASE("geometric distribution") {
    const GeometricDist g = GeometricDist::parse("geometric:0.5");
    CHECK(g.probability(1) == Rational(1, 2));
    CHECK(g.probability(3) == Rational(1, 8));
    CHECK(GeometricDist::parse("geometric:1/3").probability(2) == Rational(2, 9));
    CHECK(g.cdf(2) == doctest::Approx(0.75));
    CHECK_THROWS(GeometricDist::parse("geometric:1.5"));

    const std::size_t n = 1'000'000;
    const Stream s = sample_stream(g, n, 3);
    std::size_t ones = 0;
    for (auto y : s.y) ones += y == 1;
    CHECK(std::fabs(static_cast<double>(ones) / n - 0.5) < 3 * std::sqrt(0.25 / n));
    CHECK(sample_stream(g, 1000, 3).y == std::vector<std::uint64_t>(s.y.begin(), s.y.begin() + 1000));
}

TEST_CASE("early hitters") {
    const GeometricDist g(Rational(1, 2));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Stream s = sample_stream(g, 1000, seed);
        const auto h = early_hitters(s, g, 1.0);
        REQUIRE_FALSE(h.empty());
        CHECK(h.front().label == s.y[0]);
        CHECK(h.front().first_index == 1);
    }
    // at eps = 0.01 the expected count is small; across seeds some list is nonempty
    bool found = false;
    for (std::uint64_t seed = 1; seed <= 20 && !found; ++seed)
        found = !early_hitters(sample_stream(g, 1'000'000, seed), g, 0.01).empty();
    CHECK(found);
}

TEST_CASE("adversarial function") {
    const GeometricDist g(Rational(1, 2));
    const Stream s = sample_stream(g, 1'000'000, 7);
    const AdversarialFunction f = adversarial_function(s, g);
    REQUIRE_FALSE(f.points.empty());
    CHECK(f.expectation_below_zeta2);
    CHECK(f.expectation <= zeta2_lower());
    for (const auto& p : f.points) {
        CHECK(Rational(p.first_index) * p.n * p.n * p.n * g.probability(p.label) <= 1);
        CHECK(f(p.label) == p.value);
    }
    CHECK(f(1000) == 0);
    for (const auto& sp : adversarial_spikes(f, s)) {
        CHECK(sp.certified);
        CHECK(sp.average >= sp.n);
    }
    CHECK(zeta2_lower() < Rational(16449340668 + 1, 10'000'000'000LL));
}

TEST_CASE("bounded suite") {
    const GeometricDist g(Rational(1, 2));
    const Stream s = sample_stream(g, 1'000'000, 11);
    const auto a = bounded_suite(s, g, 11);
    const auto b = bounded_suite_serial(s, g, 11);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].labels == b[i].labels);
        CHECK(a[i].average == b[i].average);
        const double p = a[i].expectation;
        CHECK(a[i].deviation <= 3 * std::sqrt(p * (1 - p) / 1e6) + 1e-12);
        CHECK(a[i].average <= 1.0);
    }
}

TEST_CASE("lln pipeline") {
    const auto r = lln_suite("geometric:0.5", 100'000, 13, {1.0, 0.1});
    CHECK(r.ok);
    CHECK(r.result.at("spikes_certified").get<bool>());
}
