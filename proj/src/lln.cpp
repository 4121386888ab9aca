#include "clm/lln.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "clm/measure.hpp"

namespace clm {

namespace {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    if (auto slash = s.find('/'); slash != std::string::npos)
        return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Int(s));
    const std::string frac = s.substr(dot + 1);
    const std::string whole = s.substr(0, dot);
    Int den = ipow(Int(10), frac.size());
    Int num = Int((whole.empty() ? "0" : whole) + frac);
    if (!frac.empty() && frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal " + s);
    return Rational(num, den);
}

}  // namespace

GeometricDist::GeometricDist(const Rational& theta) : theta_(theta) {
    if (theta <= 0 || theta >= 1) throw std::invalid_argument("geometric parameter must lie in (0, 1)");
    log_fail_ = std::log1p(-static_cast<long double>(to_double(theta)));
}

GeometricDist GeometricDist::parse(const std::string& text) {
    const std::string prefix = "geometric:";
    if (text.rfind(prefix, 0) != 0) throw std::invalid_argument("unknown distribution " + text);
    try {
        return GeometricDist(parse_rational(text.substr(prefix.size())));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad distribution parameter in " + text);
    }
}

Rational GeometricDist::probability(std::uint64_t k) const {
    if (k == 0) return 0;
    return theta_ * rpow(1 - theta_, static_cast<std::int64_t>(k - 1));
}

long double GeometricDist::probability_approx(std::uint64_t k) const {
    if (k == 0) return 0;
    return static_cast<long double>(to_double(theta_)) * std::exp(log_fail_ * static_cast<long double>(k - 1));
}

long double GeometricDist::cdf(std::uint64_t k) const { return -std::expm1(log_fail_ * static_cast<long double>(k)); }

std::uint64_t GeometricDist::sample(std::mt19937_64& rng) const {
    // P(K > k) = (1 - theta)^k, so K = 1 + floor(log U / log(1 - theta)).
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(static_cast<long double>(u)) / log_fail_));
}

std::string GeometricDist::str() const { return "geometric:" + to_string(theta_); }

Stream sample_stream(const GeometricDist& dist, std::size_t n, std::uint64_t seed) {
    if (n > 100'000'000) throw std::invalid_argument("stream length exceeds 10^8");
    Stream s;
    s.seed = seed;
    s.y.resize(n);
    auto rng = task_stream(seed, 0);
    for (auto& v : s.y) v = dist.sample(rng);
    return s;
}

namespace {

// label -> first 1-based index
std::map<std::uint64_t, std::uint64_t> first_indices(const Stream& stream) {
    std::map<std::uint64_t, std::uint64_t> first;
    for (std::size_t j = 0; j < stream.y.size(); ++j) first.emplace(stream.y[j], j + 1);
    return first;
}

}  // namespace

std::vector<Hitter> early_hitters(const Stream& stream, const GeometricDist& dist, double eps) {
    std::vector<Hitter> out;
    const Rational e(eps);
    for (const auto& [label, i] : first_indices(stream))
        if (dist.probability(label) * i <= e) out.push_back({label, i});
    std::sort(out.begin(), out.end(),
              [](const Hitter& a, const Hitter& b) { return a.first_index < b.first_index; });
    return out;
}

Rational AdversarialFunction::operator()(std::uint64_t label) const {
    for (const auto& p : points)
        if (p.label == label) return p.value;
    return 0;
}

AdversarialFunction adversarial_function(const Stream& stream, const GeometricDist& dist) {
    struct Candidate {
        std::uint64_t label, index, capacity;
    };
    std::vector<Candidate> cands;
    for (const auto& [label, i] : first_indices(stream)) {
        const Rational pi = dist.probability(label) * i;
        if (pi > 1) continue;
        // Largest n with n^3 p i <= 1.
        std::uint64_t n = 1;
        while (pi * ipow(Int(n + 1), 3) <= 1) ++n;
        cands.push_back({label, i, n});
    }
    // Nested intervals [1, c]: smallest capacities first, each takes the least free n.
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.capacity != b.capacity ? a.capacity < b.capacity : a.index < b.index;
    });
    AdversarialFunction f;
    std::uint64_t next = 1;
    for (const auto& c : cands) {
        if (c.capacity < next) continue;
        AdversarialPoint pt;
        pt.n = next++;
        pt.label = c.label;
        pt.first_index = c.index;
        pt.value = Rational(1, Int(pt.n) * pt.n) / dist.probability(c.label);
        f.points.push_back(pt);
    }
    std::sort(f.points.begin(), f.points.end(),
              [](const AdversarialPoint& a, const AdversarialPoint& b) { return a.n < b.n; });
    f.expectation = 0;
    for (const auto& p : f.points) f.expectation += Rational(1, Int(p.n) * p.n);
    f.expectation_below_zeta2 = f.expectation <= zeta2_lower();
    return f;
}

std::vector<Spike> adversarial_spikes(const AdversarialFunction& f, const Stream& stream) {
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (std::size_t k = 0; k < f.points.size(); ++k) slot.emplace(f.points[k].label, k);
    std::vector<std::pair<std::uint64_t, std::size_t>> wanted;  // (index, point)
    for (std::size_t k = 0; k < f.points.size(); ++k) wanted.emplace_back(f.points[k].first_index, k);
    std::sort(wanted.begin(), wanted.end());

    std::vector<std::uint64_t> hits(f.points.size(), 0);
    std::vector<Spike> out(f.points.size());
    std::size_t w = 0;
    for (std::size_t j = 0; j < stream.y.size() && w < wanted.size(); ++j) {
        if (auto it = slot.find(stream.y[j]); it != slot.end()) ++hits[it->second];
        while (w < wanted.size() && wanted[w].first == j + 1) {
            Rational sum = 0;
            for (std::size_t k = 0; k < hits.size(); ++k)
                if (hits[k] != 0) sum += f.points[k].value * hits[k];
            const auto& pt = f.points[wanted[w].second];
            Spike s;
            s.n = pt.n;
            s.index = j + 1;
            s.average = sum / (j + 1);
            s.certified = s.average >= pt.n;
            out[wanted[w].second] = s;
            ++w;
        }
    }
    return out;
}

std::vector<std::pair<std::uint64_t, double>> running_average_profile(const AdversarialFunction& f,
                                                                      const Stream& stream) {
    std::unordered_map<std::uint64_t, double> value;
    for (const auto& p : f.points) value.emplace(p.label, to_double(p.value));
    std::vector<std::pair<std::uint64_t, double>> out;
    long double sum = 0;
    std::uint64_t next = 1;
    for (std::size_t j = 0; j < stream.y.size(); ++j) {
        if (auto it = value.find(stream.y[j]); it != value.end()) sum += it->second;
        const std::uint64_t i = j + 1;
        if (i == next || i == stream.y.size()) {
            out.emplace_back(i, static_cast<double>(sum / static_cast<long double>(i)));
            next = std::max(next + 1, next * 5 / 4);
        }
    }
    return out;
}

namespace {

IndicatorCheck one_indicator(const Stream& stream, const GeometricDist& dist, std::uint64_t seed, unsigned k,
                             std::uint64_t max_label) {
    auto rng = task_stream(seed, k);
    IndicatorCheck c;
    std::vector<bool> in(max_label + 1, false);
    for (std::uint64_t x = 1; x <= max_label; ++x)
        if (rng() & 1U) {
            in[x] = true;
            c.labels.push_back(x);
        }
    Rational e = 0;
    for (std::uint64_t x : c.labels) e += dist.probability(x);
    c.expectation = to_double(e);
    std::uint64_t hits = 0;
    for (std::uint64_t y : stream.y)
        if (y <= max_label && in[y]) ++hits;
    c.average = stream.y.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(stream.y.size());
    c.deviation = std::fabs(c.average - c.expectation);
    return c;
}

}  // namespace

std::vector<IndicatorCheck> bounded_suite(const Stream& stream, const GeometricDist& dist, std::uint64_t seed,
                                          unsigned count, std::uint64_t max_label) {
    std::vector<IndicatorCheck> out(count);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < static_cast<int>(count); ++k)
        out[static_cast<std::size_t>(k)] = one_indicator(stream, dist, seed, static_cast<unsigned>(k), max_label);
    return out;
}

std::vector<IndicatorCheck> bounded_suite_serial(const Stream& stream, const GeometricDist& dist,
                                                 std::uint64_t seed, unsigned count, std::uint64_t max_label) {
    std::vector<IndicatorCheck> out;
    for (unsigned k = 0; k < count; ++k) out.push_back(one_indicator(stream, dist, seed, k, max_label));
    return out;
}

Rational zeta2_lower() { return Rational(Int(16449340668), Int(10000000000)); }

}  // namespace clm
