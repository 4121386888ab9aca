// One PASS/FAIL line per headline criterion. Exit status 1 if any line fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clm/abelian.hpp"
#include "clm/arith.hpp"
#include "clm/measure.hpp"
#include "clm/module_oracle.hpp"
#include "clm/modules.hpp"
#include "clm/pipelines.hpp"
#include "clm/quartic.hpp"

#ifndef CLM_LAB_PATH
#error "CLM_LAB_PATH must point at the clm-lab binary"
#endif

namespace {

using namespace clm;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << detail << std::endl;
    if (!pass) ++failures;
}

template <typename F>
void guarded(int id, const std::string& title, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, title, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double x, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

void criterion1() {
    const auto dir = std::filesystem::current_path() / "acceptance-cache";
    const auto out = std::filesystem::current_path() / "acceptance-disprove.json";
    std::filesystem::create_directories(dir);
    const std::string cmd = "CLM_LAB_CACHE_DIR='" + dir.string() + "' '" CLM_LAB_PATH "' disprove-quartic --D 1e6 --out '" +
                            out.string() + "'";
    const int rc = std::system(cmd.c_str());
    std::ifstream is(out);
    const auto doc = nlohmann::json::parse(is);
    const auto& r = doc.at("result");
    const double lo = r.at("bracket").at("lower"), hi = r.at("bracket").at("upper");
    const double heur = r.at("heuristic_value");
    const bool pass = rc == 0 && lo <= 0.9914 && 0.9914 <= hi && hi - lo < 0.01 && std::fabs(heur - 0.8402) < 5e-5;
    report(1, "quartic disproof", pass,
           "bracket [" + fmt(lo, 8) + ", " + fmt(hi, 8) + "] width " + fmt(hi - lo, 4) + ", heuristic " + fmt(heur) +
               ", exit " + std::to_string(rc));
}

void criterion2() {
    const std::uint64_t x = 10'000'000'000ULL;
    const TBracket t = t_constant(100'000'000);
    const double total = static_cast<double>(count_fields(x));
    std::string detail;
    bool pass = total > 0;
    for (std::int64_t d : {5, 8, 13, 17}) {
        const double ratio = static_cast<double>(count_fields(x, d)) / total;
        const double mid = p_k_limit(d, t).mid();
        pass = pass && std::fabs(ratio - mid) < 0.02;
        detail += "d=" + std::to_string(d) + " " + fmt(ratio, 5) + " vs " + fmt(mid, 5) + "; ";
    }
    const bool twelve = count_fields(x, 12) == 0;
    std::uint64_t negative_nonzero = 0, negatives = 0;
    for (std::int64_t d = -3; d >= -10'000; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        ++negatives;
        if (count_fields(x, d) != 0) ++negative_nonzero;
    }
    pass = pass && twelve && negative_nonzero == 0;
    detail += "#C_12 = 0: " + std::string(twelve ? "yes" : "no") + "; nonzero #C_d for " +
              std::to_string(negative_nonzero) + "/" + std::to_string(negatives) + " negative d";
    report(2, "subfield proportions at x = 1e10 (absolute tolerance 0.02)", pass, detail);
}

void criterion3() {
    std::uint64_t checks = 0, mismatches = 0;
    for (std::uint64_t p : {2, 3}) {
        std::vector<Partition> shapes;
        for (unsigned n = 0; arith::checked_pow(p, n) <= oracle::kMaxOrder; ++n)
            for (auto& l : partitions_of(n)) shapes.push_back(l);
        for (const auto& a : shapes) {
            for (const auto& b : shapes) {
                ++checks;
                if (oracle::brute_hom(a, b, p) != hom_count(a, b, Int(p))) ++mismatches;
            }
            ++checks;
            if (oracle::brute_aut(a, p) != aut_count(a, Int(p))) ++mismatches;
            for (unsigned u = 0; u <= 3; ++u) {
                ++checks;
                if (oracle::brute_sur(a, p, u) != sur_count(a, Int(p), u)) ++mismatches;
            }
        }
    }
    report(3, "hom/aut/sur against brute force", mismatches == 0,
           std::to_string(checks) + " comparisons, " + std::to_string(mismatches) + " mismatches");
}

ModuleShape random_torsion(const ClmMeasure& m, std::mt19937_64& rng) {
    ModuleShape e;
    std::uniform_int_distribution<unsigned> size(0, 3);
    for (const auto& ideal : m.ideals) {
        if (rng() % 3 == 0) continue;
        const auto parts = partitions_of(size(rng));
        if (parts.empty()) continue;
        e.torsion[ideal] = parts[rng() % parts.size()];
    }
    e.normalize();
    return e;
}

void criterion4() {
    std::mt19937_64 rng(20240607);
    // (a) closed-form normalizer against the explicit partition sum.
    const std::vector<std::uint64_t> qs = {2, 3, 4, 5, 7, 8, 9, 11, 13, 25};
    int agree = 0;
    std::string detail;
    for (int k = 0; k < 10; ++k) {
        const Int q = qs[rng() % qs.size()];
        const unsigned u = static_cast<unsigned>(rng() % 4);
        const Interval closed = local_normalizer(q, u, Rational(1, Int(1) << 64));
        const Interval direct = partition_sum_bracket(q, u, 14);
        const bool overlap = closed.lo <= direct.hi && direct.lo <= closed.hi;
        const bool tight = direct.width() < Rational(1, 1000000);
        if (overlap && tight) ++agree;
    }
    detail += "normalizers " + std::to_string(agree) + "/10; ";

    // (b) P(P_V + E) = P_V(E) on random finite E.
    const GroupSpec g = build_group({4});
    std::map<int, unsigned> ranks;
    const auto comps = components(g);
    for (const auto& c : comps) ranks[c.id] = static_cast<unsigned>(rng() % 3);
    const ClmMeasure m = make_measure(g, comps, {3, 5, 7}, ranks);
    int exact = 0;
    for (int k = 0; k < 50; ++k) {
        const ModuleShape e = random_torsion(m, rng);
        ModuleShape with_free = e;
        with_free.ranks = m.ranks;
        const Interval a = probability(with_free, m);
        const Interval b = probability_finite(e, m);
        if (a.lo == b.lo && a.hi == b.hi) ++exact;
    }
    detail += "P(P_V+E) = P_V(E) " + std::to_string(exact) + "/50; ";

    // (c) E #Sur(X, A) = |A|^{-u} for every A of order <= 81.
    const GroupSpec trivial = build_group({1});
    const auto tcomps = components(trivial);
    std::vector<std::uint64_t> primes;
    for (auto p : arith::primes_up_to(81)) primes.push_back(p);
    int moments = 0, contained = 0;
    for (unsigned u = 0; u <= 2; ++u) {
        const ClmMeasure mu = make_measure(trivial, tcomps, primes, {{tcomps.front().id, u}});
        for (std::uint64_t order = 1; order <= 81; ++order) {
            // every abelian group of this order: one partition per prime power
            std::vector<ModuleShape> groups(1);
            for (const auto& [p, e] : arith::factorize(order)) {
                const auto it = std::find_if(mu.ideals.begin(), mu.ideals.end(),
                                             [p = p](const MaximalIdeal& i) { return i.p == p; });
                std::vector<ModuleShape> next;
                for (const auto& base : groups)
                    for (const auto& lam : partitions_of(e)) {
                        ModuleShape s = base;
                        s.torsion[*it] = lam;
                        next.push_back(s);
                    }
                groups = std::move(next);
            }
            for (const auto& a : groups) {
                const ExpectationBracket br = surjection_moment_check(a, mu);
                ++moments;
                if (br.contains(Rational(Int(1), ipow(Int(order), u)))) ++contained;
            }
        }
    }
    detail += "surjection moments " + std::to_string(contained) + "/" + std::to_string(moments);
    report(4, "measure coherence", agree == 10 && exact == 50 && contained == moments, detail);
}

void criterion5() {
    std::string detail;
    bool pass = true;
    for (const char* group : {"C4", "C6"}) {
        const auto r = lseries_suite(group, "C2xC2", 10'000, 10'000, 3, 2, 1);
        const std::uint64_t checks = r.result.at("checks"), mism = r.result.at("mismatches");
        pass = pass && r.ok && checks > 0 && mism == 0;
        detail += std::string(group) + ": " + std::to_string(checks) + " identities, " + std::to_string(mism) +
                  " coefficient deviations; ";
    }
    report(5, "Z_u / L-product identities to norm 1e4", pass, detail);
}

void criterion6() {
    const auto r = stickelberger_suite(10'000, {3, 5, 7, 11, 13}, 101, 4);
    const std::uint64_t tests = r.result.at("tests"), fails = r.result.at("failures");
    const std::uint64_t tf = r.result.at("teichmuller_failures");
    const bool exc = r.result.at("exception_branch_tested");
    report(6, "Stickelberger valuations and Teichmuller units", r.ok && exc && fails == 0 && tf == 0,
           std::to_string(tests) + " (d, p) pairs, " + std::to_string(fails) + " failures; d = -3, p = 3 branch " +
               (exc ? "checked" : "missing") + "; Teichmuller failures " + std::to_string(tf) + " for q <= 101");
}

void criterion7() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed : {7, 11, 13}) {
        const auto r = lln_suite("geometric:0.5", 1'000'000, seed, {1.0, 0.5, 0.1, 0.01});
        const auto points = r.result.at("adversarial_points").size();
        const bool spikes = r.result.at("spikes_certified");
        const bool cert = r.result.at("expectation_certificate").at("below_pi2_over_6");
        const double dev = r.result.at("bounded_suite").at("max_deviation");
        pass = pass && r.ok && points >= 1 && spikes && cert && dev < 5e-3;
        detail += "seed " + std::to_string(seed) + ": " + std::to_string(points) + " points, spikes " +
                  (spikes ? "ok" : "BAD") + ", E(f) " + std::string(r.result.at("expectation_certificate").at("value")) +
                  ", bounded dev " + fmt(dev, 3) + "; ";
    }
    report(7, "LLN adversary", pass, detail);
}

void criterion8() {
    const auto r = c58_suite({100, 1000, 10000}, 1);
    std::string detail;
    for (const auto& c : r.result.at("characters")) {
        const auto& seq = c.at("sequence");
        detail += "(";
        for (std::size_t k = 0; k < seq.size(); ++k)
            detail += (k ? " > " : "") + fmt(seq[k].at("ratio_upper").get<double>(), 6);
        detail += ") ";
    }
    report(8, "C58 L-ratio sequences", r.ok, detail);
}

}  // namespace

int main() {
    guarded(1, "quartic disproof", criterion1);
    guarded(2, "subfield proportions", criterion2);
    guarded(3, "hom/aut/sur against brute force", criterion3);
    guarded(4, "measure coherence", criterion4);
    guarded(5, "Z_u / L-product identities", criterion5);
    guarded(6, "Stickelberger valuations", criterion6);
    guarded(7, "LLN adversary", criterion7);
    guarded(8, "C58 L-ratio sequences", criterion8);
    return failures == 0 ? 0 : 1;
}
