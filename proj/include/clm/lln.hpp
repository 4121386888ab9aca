#pragma once

// i.i.d. streams from a discrete distribution, early hitters, the adversarial function
// f(x_n) = n^{-2}/p(x_n) whose running averages spike above n, and an empirical check
// that bounded functions (indicators) do average out.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clm/numeric.hpp"

namespace clm {

/// Labels 1, 2, 3, ... with p(k) = theta (1 - theta)^{k-1}, theta rational in (0, 1).
class GeometricDist {
public:
    explicit GeometricDist(const Rational& theta);
    /// "geometric:0.5" or "geometric:1/3".
    static GeometricDist parse(const std::string& text);

    const Rational& theta() const { return theta_; }
    Rational probability(std::uint64_t k) const;
    long double probability_approx(std::uint64_t k) const;
    /// P(label in [1, k]) = 1 - (1 - theta)^k.
    long double cdf(std::uint64_t k) const;
    std::uint64_t sample(std::mt19937_64& rng) const;
    std::string str() const;

private:
    Rational theta_;
    long double log_fail_;
};

struct Stream {
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> y;  // y[0] is y_1
};

/// Single-threaded and reproducible from the seed. n <= 10^8.
Stream sample_stream(const GeometricDist& dist, std::size_t n, std::uint64_t seed);

struct Hitter {
    std::uint64_t label = 0;
    std::uint64_t first_index = 0;  // 1-based
};

/// Labels whose first occurrence i satisfies i p(x) <= eps, sorted by i.
std::vector<Hitter> early_hitters(const Stream& stream, const GeometricDist& dist, double eps);

struct AdversarialPoint {
    std::uint64_t n = 0;
    std::uint64_t label = 0;
    std::uint64_t first_index = 0;  // i(n), with i(n) n^3 p(x_n) <= 1
    Rational value;                 // f(x_n) = n^{-2} / p(x_n)
};

struct Spike {
    std::uint64_t n = 0;
    std::uint64_t index = 0;
    Rational average;  // (1/i) sum_{j <= i} f(y_j), exact
    bool certified = false;  // average >= n
};

struct AdversarialFunction {
    std::vector<AdversarialPoint> points;  // sorted by n
    Rational expectation;                  // sum over points of n^{-2} = E(f) restricted to them
    bool expectation_below_zeta2 = false;

    Rational operator()(std::uint64_t label) const;
};

/// Assigns distinct n to labels with first index i(x) and n^3 i(x) p(x) <= 1, as many as possible.
AdversarialFunction adversarial_function(const Stream& stream, const GeometricDist& dist);

/// Exact running averages of f at every i(n).
std::vector<Spike> adversarial_spikes(const AdversarialFunction& f, const Stream& stream);

/// (index, running average) at roughly logarithmically spaced indices and the last index.
std::vector<std::pair<std::uint64_t, double>> running_average_profile(const AdversarialFunction& f,
                                                                      const Stream& stream);

struct IndicatorCheck {
    std::vector<std::uint64_t> labels;
    double expectation = 0.0;
    double average = 0.0;
    double deviation = 0.0;
};

/// count random indicator functions of subsets of {1..max_label}, drawn from seed; OpenMP over
/// functions, and the serial reference.
std::vector<IndicatorCheck> bounded_suite(const Stream& stream, const GeometricDist& dist, std::uint64_t seed,
                                          unsigned count = 10, std::uint64_t max_label = 12);
std::vector<IndicatorCheck> bounded_suite_serial(const Stream& stream, const GeometricDist& dist,
                                                 std::uint64_t seed, unsigned count = 10,
                                                 std::uint64_t max_label = 12);

/// Rational lower bound for pi^2/6.
Rational zeta2_lower();

}  // namespace clm
