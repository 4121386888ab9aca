#pragma once

// End-to-end runs shared by the CLI and the acceptance suite. Each returns a JSON
// result and sets ok = false when one of its invariant checks fails.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "clm/measure.hpp"
#include "clm/quadforms.hpp"

namespace clm {

using Json = nlohmann::ordered_json;

struct PipelineResult {
    Json result;
    bool ok = true;
};

/// Interval as {"lower", "upper"} doubles rounded outward plus exact strings.
Json interval_json(const Rational& lo, const Rational& hi);

/// Bounded functions known to the CLI: "indicator-<p>-coprime", "indicator-zero", "inverse-order".
BoundedFunction named_function(const std::string& name);

/// Measure over the components of the group shorthand (the minus part for "...minus").
ClmMeasure measure_from_shorthand(const std::string& group, const std::vector<std::uint64_t>& primes, unsigned u);

/// E[indicator(3 does not divide #M)] for u = 1, S = {3} on the minus part of C2; the closed
/// form prod_{k >= 2}(1 - 3^{-k}) is reported next to the bracket.
PipelineResult heuristic_quartic_expectation();

/// Default cache file: $CLM_LAB_CACHE_DIR/<name>, else ./clm-cache/<name>.
std::string default_cache_path(const std::string& name);

/// Loads or extends the cache at path so that it covers [1, D].
FormClassTable ensure_cache(const std::string& path, std::uint64_t D, TableFilter filter);

PipelineResult disprove_quartic(std::uint64_t D, std::uint64_t tP, const std::string& cache_path);
PipelineResult quartic_density(std::uint64_t D, std::uint64_t x, std::uint64_t tP, const std::string& cache_path);

/// Product and analytic identities for every component of G and every character of C of
/// order <= max_order, S = primes <= smax not dividing #G.
PipelineResult lseries_suite(const std::string& group, const std::string& class_group, std::uint64_t smax,
                             std::uint64_t B, unsigned max_uv, unsigned max_order, std::uint64_t seed);

PipelineResult stickelberger_suite(std::int64_t dmax, const std::vector<std::uint64_t>& primes, std::uint64_t qmax,
                                   unsigned precision);

PipelineResult lln_suite(const std::string& dist, std::size_t n, std::uint64_t seed, const std::vector<double>& eps);

PipelineResult c58_suite(const std::vector<std::uint64_t>& cutoffs, std::uint64_t seed);

}  // namespace clm
