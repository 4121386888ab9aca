#include "clm/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include "clm/abelian.hpp"
#include "clm/arith.hpp"
#include "clm/bernoulli.hpp"
#include "clm/lln.hpp"
#include "clm/lseries.hpp"
#include "clm/quartic.hpp"

namespace clm {

namespace {

constexpr double kTargetDensity = 0.9914;
constexpr double kReferenceHeuristic = 0.8402;

Json bracket_json(const Bracket& b) { return {{"lower", b.lower}, {"upper", b.upper}, {"width", b.width()}}; }

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::uint64_t parse_prime_token(const std::string& tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad prime " + tok);
    return std::stoull(tok);
}

}  // namespace

Json interval_json(const Rational& lo, const Rational& hi) {
    return {{"lower", to_double_down(lo)}, {"upper", to_double_up(hi)}};
}

BoundedFunction named_function(const std::string& name) {
    BoundedFunction f;
    f.lower = 0;
    f.upper = 1;
    if (name == "indicator-zero") {
        f.f = [](const ModuleShape& m) { return Rational(m.is_torsion_zero() ? 1 : 0); };
        return f;
    }
    if (name == "inverse-order") {
        f.f = [](const ModuleShape& m) { return Rational(Int(1), m.torsion_order()); };
        return f;
    }
    const std::string pre = "indicator-", post = "-coprime";
    if (name.rfind(pre, 0) == 0 && name.size() > pre.size() + post.size() && name.ends_with(post)) {
        const std::uint64_t p = parse_prime_token(name.substr(pre.size(), name.size() - pre.size() - post.size()));
        if (!arith::is_prime(p)) throw std::invalid_argument("indicator prime is not prime");
        f.f = [p](const ModuleShape& m) { return Rational(m.torsion_order() % p == 0 ? 0 : 1); };
        return f;
    }
    throw std::invalid_argument("unknown function " + name);
}

ClmMeasure measure_from_shorthand(const std::string& group, const std::vector<std::uint64_t>& primes, unsigned u) {
    const GroupDocument doc = parse_group_shorthand(group);
    const auto comps = doc.involution ? minus_components(doc.group, *doc.involution) : components(doc.group);
    std::map<int, unsigned> ranks;
    for (const auto& c : comps) ranks[c.id] = u;
    return make_measure(doc.group, comps, primes, ranks);
}

PipelineResult heuristic_quartic_expectation() {
    PipelineResult out;
    const ClmMeasure m = measure_from_shorthand("C2minus", {3}, 1);
    const ExpectationBracket eb = expectation_bracket(named_function("indicator-3-coprime"), m);
    // prod_{k=2}^{K} (1 - 3^{-k}) times (1 - sum_{k > K} 3^{-k}) is a lower bound.
    constexpr unsigned K = 80;
    Rational prod = 1;
    for (unsigned k = 2; k <= K; ++k) prod *= 1 - Rational(Int(1), ipow(Int(3), k));
    const Rational closed_lo = prod * (1 - Rational(Int(1), 2 * ipow(Int(3), K)));
    out.ok = eb.lower <= prod && closed_lo <= eb.upper;
    out.result = {{"group", "C2minus"},
                  {"S", {3}},
                  {"u", 1},
                  {"function", "indicator-3-coprime"},
                  {"bracket", interval_json(eb.lower, eb.upper)},
                  {"truncation", eb.truncation},
                  {"closed_form", interval_json(closed_lo, prod)},
                  {"value", round4(to_double(prod))},
                  {"reference_value", kReferenceHeuristic}};
    return out;
}

std::string default_cache_path(const std::string& name) {
    const char* dir = std::getenv("CLM_LAB_CACHE_DIR");
    const std::filesystem::path base = dir != nullptr && *dir != '\0' ? std::filesystem::path(dir) : "clm-cache";
    return (base / name).string();
}

FormClassTable ensure_cache(const std::string& path, std::uint64_t D, TableFilter filter) {
    return extend_cache(path, 1, static_cast<std::int64_t>(D), filter);
}

PipelineResult disprove_quartic(std::uint64_t D, std::uint64_t tP, const std::string& cache_path) {
    PipelineResult out;
    const FormClassTable table = ensure_cache(cache_path, D, TableFilter::sum_of_two_squares);
    const TBracket t = t_constant(tP);
    const DensityBracket db = density_bracket(D, t, table);
    const PipelineResult heur = heuristic_quartic_expectation();
    const bool contains = db.lower <= kTargetDensity && kTargetDensity <= db.upper;
    out.ok = db.lower <= db.upper && contains && heur.ok;
    out.result = {{"bracket", {{"lower", db.lower}, {"upper", db.upper}, {"width", db.upper - db.lower}}},
                  {"target_value", kTargetDensity},
                  {"contains_target", contains},
                  {"heuristic", heur.result},
                  {"heuristic_value", heur.result["value"]},
                  {"D", D},
                  {"t", bracket_json(t.t)},
                  {"tP", tP},
                  {"subfields", db.subfields},
                  {"subfields_class_number_div3", db.subfields_div3},
                  {"mass_accounted", {{"lower", db.mass_lower}, {"upper", db.mass_upper}}},
                  {"cache", cache_path}};
    return out;
}

PipelineResult quartic_density(std::uint64_t D, std::uint64_t x, std::uint64_t tP, const std::string& cache_path) {
    PipelineResult out;
    const std::uint64_t need = std::max<std::uint64_t>(D, arith::icbrt(x) + 1);
    const FormClassTable table = ensure_cache(cache_path, need, TableFilter::sum_of_two_squares);
    const TBracket t = t_constant(tP);
    const DensityBracket db = density_bracket(D, t, table);
    const EmpiricalDensity ed = empirical_density(x, table);
    const double slack = 2.0 * std::pow(static_cast<double>(x), -0.25);
    const bool within = ed.fields > 0 && db.lower - slack <= ed.ratio() && ed.ratio() <= db.upper + slack;
    out.ok = db.lower <= db.upper && (ed.fields == 0 || within);
    out.result = {{"lower", db.lower},
                  {"upper", db.upper},
                  {"D", D},
                  {"x", x},
                  {"t_lower", t.t.lower},
                  {"t_upper", t.t.upper},
                  {"empirical", ed.ratio()},
                  {"fields", ed.fields},
                  {"fields_not_div3", ed.fields_not_div3},
                  {"error_slack", slack},
                  {"empirical_within_slack", within},
                  {"mass_accounted", {{"lower", db.mass_lower}, {"upper", db.mass_upper}}}};
    return out;
}

PipelineResult lseries_suite(const std::string& group, const std::string& class_group, std::uint64_t smax,
                             std::uint64_t B, unsigned max_uv, unsigned max_order, std::uint64_t seed) {
    PipelineResult out;
    const GroupDocument g = parse_group_shorthand(group);
    const GroupSpec c = parse_group_shorthand(class_group).group;
    const auto comps = g.involution ? minus_components(g.group, *g.involution) : components(g.group);
    std::vector<std::uint64_t> primes;
    for (auto p : arith::primes_up_to(smax))
        if (g.group.order % p != 0) primes.push_back(p);
    Json rows = Json::array();
    std::uint64_t checks = 0, mismatches = 0;
    for (const auto& comp : comps) {
        const auto ideals = maximal_ideals(comp, primes, g.group.order);
        const ClassDatum datum = seeded_datum(c, ideals, seed);
        for (const auto& phi : datum.characters()) {
            if (phi.order > max_order) continue;
            auto record = [&](const char* kind, unsigned u, unsigned v, const IdentityCheck& r) {
                ++checks;
                mismatches += r.mismatches;
                if (!r.holds) out.ok = false;
                rows.push_back({{"component", comp.id},
                                {"n", comp.n},
                                {"character", phi.exponents},
                                {"identity", kind},
                                {"u", u},
                                {"v", v},
                                {"bound", r.bound},
                                {"mismatches", r.mismatches},
                                {"holds", r.holds}});
            };
            for (unsigned u = 1; u <= max_uv; ++u)
                record("analytic", u, 0, verify_analytic_identity(ideals, datum, phi, u, B));
            for (unsigned u = 1; u < max_uv; ++u)
                for (unsigned v = 1; u + v <= max_uv; ++v)
                    record("product", u, v, verify_product_identity(ideals, datum, phi, u, v, B));
        }
    }
    out.result = {{"group", group},       {"class_group", class_group}, {"S_max", smax},
                  {"B", B},               {"seed", seed},               {"checks", checks},
                  {"mismatches", mismatches}, {"rows", rows}};
    return out;
}

PipelineResult stickelberger_suite(std::int64_t dmax, const std::vector<std::uint64_t>& primes, std::uint64_t qmax,
                                   unsigned precision) {
    PipelineResult out;
    std::vector<std::int64_t> ds;
    for (std::int64_t d = -3; d > -dmax; --d)
        if (is_fundamental_discriminant(d)) ds.push_back(d);
    std::vector<std::vector<StickelbergerRow>> per_d(ds.size());
    std::vector<char> class_ok(ds.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ds.size()); ++i) {
        const std::int64_t d = ds[static_cast<std::size_t>(i)];
        const auto ad = static_cast<std::uint64_t>(-d);
        const std::uint64_t h = class_number_definite(d);
        const Rational beta = beta_chi(quadratic_character(d)).rational_value();
        for (std::uint64_t p : primes) {
            if (p % 2 == 0) continue;
            if (ad % p == 0 && !(d == -3 && p == 3)) continue;
            per_d[static_cast<std::size_t>(i)].push_back(stickelberger_valuation_test(d, p, h, beta));
        }
        const Rational w_half = d == -3 ? 3 : d == -4 ? 2 : 1;
        class_ok[static_cast<std::size_t>(i)] = w_half * abs(beta) == Rational(h);
    }
    Json rows = Json::array();
    std::uint64_t tests = 0, failures = 0, class_failures = 0;
    bool exception_seen = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (!class_ok[i]) ++class_failures;
        for (const auto& r : per_d[i]) {
            ++tests;
            if (!r.pass) ++failures;
            if (r.exception_branch) exception_seen = true;
            rows.push_back({{"d", r.d}, {"p", r.p}, {"v_h", r.v_h}, {"v_beta", r.v_beta}, {"pass", r.pass}});
        }
    }
    Json teich = Json::array();
    std::uint64_t teich_failures = 0;
    for (std::uint64_t q : arith::primes_up_to(qmax)) {
        if (q == 2) continue;
        const auto tc = teichmuller_unit_check(q, precision);
        if (!tc.ok) ++teich_failures;
        teich.push_back({{"q", q}, {"modulus", tc.modulus}, {"residue", tc.residue}, {"ok", tc.ok}});
    }
    out.ok = failures == 0 && class_failures == 0 && teich_failures == 0;
    out.result = {{"dmax", dmax},
                  {"primes", primes},
                  {"discriminants", ds.size()},
                  {"tests", tests},
                  {"failures", failures},
                  {"exception_branch_tested", exception_seen},
                  {"class_number_formula_failures", class_failures},
                  {"teichmuller", teich},
                  {"teichmuller_failures", teich_failures},
                  {"rows", rows}};
    return out;
}

PipelineResult lln_suite(const std::string& dist_text, std::size_t n, std::uint64_t seed,
                         const std::vector<double>& eps) {
    PipelineResult out;
    const GeometricDist dist = GeometricDist::parse(dist_text);
    const Stream stream = sample_stream(dist, n, seed);
    Json hitters = Json::array();
    for (double e : eps) {
        const auto h = early_hitters(stream, dist, e);
        Json first = Json::array();
        for (std::size_t k = 0; k < std::min<std::size_t>(h.size(), 10); ++k)
            first.push_back({{"label", h[k].label}, {"first_index", h[k].first_index}});
        hitters.push_back({{"eps", e}, {"count", h.size()}, {"first", first}});
    }
    const AdversarialFunction f = adversarial_function(stream, dist);
    Json points = Json::array();
    for (const auto& p : f.points)
        points.push_back({{"n", p.n}, {"label", p.label}, {"first_index", p.first_index}, {"f", to_string(p.value)}});
    Json spikes = Json::array();
    bool spikes_ok = true;
    for (const auto& s : adversarial_spikes(f, stream)) {
        spikes_ok = spikes_ok && s.certified;
        spikes.push_back({{"n", s.n},
                          {"index", s.index},
                          {"average", to_string(s.average)},
                          {"average_approx", to_double(s.average)},
                          {"certified", s.certified}});
    }
    const auto suite = bounded_suite(stream, dist, seed);
    const auto serial = bounded_suite_serial(stream, dist, seed);
    bool same = suite.size() == serial.size();
    double worst = 0.0;
    Json bounded = Json::array();
    for (std::size_t k = 0; k < suite.size(); ++k) {
        same = same && suite[k].average == serial[k].average && suite[k].labels == serial[k].labels;
        worst = std::max(worst, suite[k].deviation);
        bounded.push_back({{"labels", suite[k].labels},
                           {"expectation", suite[k].expectation},
                           {"average", suite[k].average},
                           {"deviation", suite[k].deviation}});
    }
    out.ok = spikes_ok && f.expectation_below_zeta2 && same;
    out.result = {{"dist", dist.str()},
                  {"n", n},
                  {"seed", seed},
                  {"hitters", hitters},
                  {"adversarial_points", points},
                  {"spikes", spikes},
                  {"spikes_certified", spikes_ok},
                  {"expectation_certificate", {{"value", to_string(f.expectation)},
                                               {"approx", to_double(f.expectation)},
                                               {"below_pi2_over_6", f.expectation_below_zeta2}}},
                  {"bounded_suite", {{"functions", bounded},
                                     {"max_deviation", worst},
                                     {"tolerance", 5e-3},
                                     {"converged", worst < 5e-3},
                                     {"parallel_matches_serial", same}}}};
    return out;
}

PipelineResult c58_suite(const std::vector<std::uint64_t>& cutoffs, std::uint64_t seed) {
    PipelineResult out;
    std::vector<std::uint64_t> sorted = cutoffs;
    std::sort(sorted.begin(), sorted.end());
    Json chars = Json::array();
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        const std::vector<std::uint64_t> phi = {mask & 1U, (mask >> 1U) & 1U, (mask >> 2U) & 1U};
        const auto pts = c58_equidistribution_demo(sorted, phi, seed);
        bool good = true;
        Json seq = Json::array();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (mask == 0)
                good = good && pts[k].ratio_lower == 1.0 && pts[k].ratio_upper == 1.0;
            else if (k > 0)
                good = good && pts[k].log_upper < pts[k - 1].log_lower;
            seq.push_back({{"N", pts[k].cutoff},
                           {"ideals", pts[k].ideals},
                           {"ratio_lower", pts[k].ratio_lower},
                           {"ratio_upper", pts[k].ratio_upper},
                           {"log_lower", pts[k].log_lower},
                           {"log_upper", pts[k].log_upper}});
        }
        out.ok = out.ok && good;
        chars.push_back({{"character", phi},
                         {"trivial", mask == 0},
                         {mask == 0 ? "identically_one" : "strictly_decreasing", good},
                         {"sequence", seq}});
    }
    out.result = {{"cutoffs", sorted}, {"seed", seed}, {"class_group", "C2xC2xC2"}, {"characters", chars}};
    return out;
}

}  // namespace clm
