// clm-lab: command-line front end. Reports are pretty-printed JSON on stdout or --out.
// Exit status: 0 success, 1 usage error, 2 failed invariant check.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clm/abelian.hpp"
#include "clm/arith.hpp"
#include "clm/measure.hpp"
#include "clm/pipelines.hpp"
#include "clm/quadforms.hpp"
#include "clm/quartic.hpp"

namespace {

using clm::Json;

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Options = std::map<std::string, std::string>;

std::uint64_t parse_count(const Options& o, const std::string& key) {
    const std::string& s = o.at(key);
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("--" + key + ": not a number: " + s);
    }
    if (pos != s.size() || v < 0 || v != std::floor(v) || v > 1.8e19)
        throw UsageError("--" + key + ": expected a non-negative integer, got " + s);
    return static_cast<std::uint64_t>(v);
}

double parse_real(const Options& o, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(o.at(key), &pos);
        if (pos == o.at(key).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("--" + key + ": not a number: " + o.at(key));
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<std::uint64_t> parse_list(const Options& o, const std::string& key) {
    std::vector<std::uint64_t> out;
    for (const auto& tok : split(o.at(key))) {
        Options tmp{{key, tok}};
        out.push_back(parse_count(tmp, key));
    }
    return out;
}

/// "3,5,7" or "<=100". Infinite sets ("all") are rejected.
std::vector<std::uint64_t> parse_primes(const std::string& text) {
    if (text.rfind("<=", 0) == 0) {
        Options tmp{{"S", text.substr(2)}};
        std::vector<std::uint64_t> out;
        for (auto p : clm::arith::primes_up_to(parse_count(tmp, "S"))) out.push_back(p);
        return out;
    }
    std::vector<std::uint64_t> out;
    for (const auto& tok : split(text)) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("--S must be an explicit finite list of primes, got " + text);
        const std::uint64_t p = std::stoull(tok);
        if (!clm::arith::is_prime(p)) throw UsageError("--S: " + tok + " is not prime");
        out.push_back(p);
    }
    if (out.empty()) throw UsageError("--S is empty");
    return out;
}

clm::TableFilter parse_filter(const std::string& s) {
    if (s == "fundamental") return clm::TableFilter::fundamental;
    if (s == "sum-of-two-squares") return clm::TableFilter::sum_of_two_squares;
    throw UsageError("--filter must be fundamental or sum-of-two-squares");
}

std::string cache_path(const Options& o, const std::string& fallback_name) {
    const auto it = o.find("cache");
    if (it != o.end() && !it->second.empty()) return it->second;
    return clm::default_cache_path(fallback_name);
}

Json shape_json(const clm::ModuleShape& m) { return Json::parse(clm::dump_module_shape(m)); }

struct Outcome {
    Json result;
    bool ok = true;
};

Outcome from(clm::PipelineResult r) { return {std::move(r.result), r.ok}; }

// ---- subcommands -----------------------------------------------------------

Outcome cmd_measure_expect(const Options& o) {
    const auto m = clm::measure_from_shorthand(o.at("group"), parse_primes(o.at("S")),
                                               static_cast<unsigned>(parse_count(o, "u")));
    const auto eb = clm::expectation_bracket(clm::named_function(o.at("f")), m,
                                             static_cast<unsigned>(parse_count(o, "N")));
    Outcome out;
    out.ok = eb.lower <= eb.upper;
    out.result = {{"bracket", clm::interval_json(eb.lower, eb.upper)},
                  {"truncation", eb.truncation},
                  {"residual", clm::to_double_up(eb.residual)},
                  {"ideals", m.ideals.size()},
                  {"normalizer", clm::interval_json(m.total_normalizer.lo, m.total_normalizer.hi)}};
    return out;
}

Outcome cmd_measure_sample(const Options& o) {
    const auto m = clm::measure_from_shorthand(o.at("group"), parse_primes(o.at("S")),
                                               static_cast<unsigned>(parse_count(o, "u")));
    const std::uint64_t seed = parse_count(o, "seed");
    const std::size_t count = parse_count(o, "count");
    if (count > 100'000'000) throw UsageError("--count exceeds 10^8");
    const auto shapes = clm::sample_shapes(m, seed, count);
    std::map<std::string, std::uint64_t> orders;
    std::uint64_t trivial = 0;
    for (const auto& s : shapes) {
        ++orders[s.torsion_order().str()];
        if (s.is_torsion_zero()) ++trivial;
    }
    Json hist = Json::object();
    for (const auto& [k, v] : orders) hist[k] = v;
    Json first = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(shapes.size(), 5); ++i) first.push_back(shape_json(shapes[i]));
    Outcome out;
    const auto p0 = clm::probability(clm::ModuleShape{{}, m.ranks}, m);
    out.result = {{"count", count},
                  {"seed", seed},
                  {"trivial_fraction", count ? static_cast<double>(trivial) / static_cast<double>(count) : 0.0},
                  {"trivial_probability", clm::interval_json(p0.lo, p0.hi)},
                  {"order_histogram", hist},
                  {"first_samples", first}};
    return out;
}

Outcome cmd_lseries_verify(const Options& o) {
    return from(clm::lseries_suite(o.at("group"), o.at("class-group"), parse_count(o, "smax"), parse_count(o, "B"),
                                   static_cast<unsigned>(parse_count(o, "max-uv")),
                                   static_cast<unsigned>(parse_count(o, "max-order")), parse_count(o, "seed")));
}

Outcome cmd_quartic_density(const Options& o) {
    return from(clm::quartic_density(parse_count(o, "D"), parse_count(o, "x"), parse_count(o, "tP"),
                                     cache_path(o, "forms-sum-of-two-squares.csv")));
}

Outcome cmd_quartic_count(const Options& o) {
    const std::uint64_t x = parse_count(o, "x");
    Outcome out;
    std::optional<std::int64_t> d;
    if (!o.at("d").empty()) {
        try {
            d = std::stoll(o.at("d"));
        } catch (const std::exception&) {
            throw UsageError("--d: not an integer");
        }
    }
    out.result = {{"x", x}, {"count", clm::count_fields(x, d)}};
    if (d) {
        out.result["d"] = *d;
        out.result["total"] = clm::count_fields(x);
        const clm::TBracket t = clm::t_constant(parse_count(o, "tP"));
        const auto b = clm::p_k_limit(*d, t);
        out.result["p_k_limit"] = {{"lower", b.lower}, {"upper", b.upper}};
    }
    return out;
}

Outcome cmd_stickelberger(const Options& o) {
    return from(clm::stickelberger_suite(static_cast<std::int64_t>(parse_count(o, "dmax")), parse_list(o, "primes"),
                                         parse_count(o, "qmax"), static_cast<unsigned>(parse_count(o, "precision"))));
}

Outcome cmd_quadforms(const Options& o) {
    const auto lo = static_cast<std::int64_t>(parse_count(o, "min"));
    const auto hi = static_cast<std::int64_t>(parse_count(o, "max"));
    const auto filter = parse_filter(o.at("filter"));
    const std::string path = cache_path(o, filter == clm::TableFilter::fundamental ? "forms-fundamental.csv"
                                                                                    : "forms-sum-of-two-squares.csv");
    const auto ext = clm::extend_cache(path, lo, hi, filter);
    std::uint64_t rows = 0, div3 = 0;
    Json sample = Json::array();
    for (const auto& [d, r] : ext.rows) {
        if (d < lo || d > hi) continue;
        ++rows;
        if (r.h_narrow % 3 == 0) ++div3;
        if (sample.size() < 20)
            sample.push_back({{"d", d}, {"h_narrow", r.h_narrow}, {"h", r.h_ordinary}, {"unit_norm", r.unit_norm}});
    }
    Json ranges = Json::array();
    for (const auto& [a, b] : ext.ranges) ranges.push_back({a, b});
    Outcome out;
    out.result = {{"cache", path}, {"rows_in_range", rows}, {"h_narrow_div3", div3}, {"covered", ranges},
                  {"first_rows", sample}};
    return out;
}

Outcome cmd_lln(const Options& o) {
    std::vector<double> eps;
    for (const auto& tok : split(o.at("eps"))) {
        Options tmp{{"eps", tok}};
        eps.push_back(parse_real(tmp, "eps"));
    }
    return from(clm::lln_suite(o.at("dist"), parse_count(o, "n"), parse_count(o, "seed"), eps));
}

Outcome cmd_disprove_quartic(const Options& o) {
    return from(clm::disprove_quartic(parse_count(o, "D"), parse_count(o, "tP"),
                                      cache_path(o, "forms-sum-of-two-squares.csv")));
}

Outcome cmd_demo_c58(const Options& o) { return from(clm::c58_suite(parse_list(o, "cutoffs"), parse_count(o, "seed"))); }

Outcome cmd_cache_build(const Options& o) {
    const auto filter = parse_filter(o.at("filter"));
    const std::string path = cache_path(o, "forms-fundamental.csv");
    const auto t = clm::extend_cache(path, static_cast<std::int64_t>(parse_count(o, "min")),
                                     static_cast<std::int64_t>(parse_count(o, "max")), filter);
    Outcome out;
    out.result = {{"cache", path}, {"rows", t.rows.size()}};
    return out;
}

Outcome cmd_cache_verify(const Options& o) {
    const std::string path = cache_path(o, "forms-fundamental.csv");
    const auto t = clm::load_table(path);
    const auto rep = clm::verify_table(t, parse_real(o, "fraction"), parse_count(o, "seed"));
    Outcome out;
    out.ok = rep.ok();
    out.result = {{"cache", path}, {"rows", t.rows.size()}, {"checked", rep.checked}, {"mismatched", rep.mismatched}};
    return out;
}

Outcome cmd_cache_merge(const Options& o) {
    const auto inputs = split(o.at("inputs"));
    if (inputs.size() < 2) throw UsageError("--inputs needs at least two cache files");
    clm::FormClassTable merged = clm::load_table(inputs[0]);
    for (std::size_t i = 1; i < inputs.size(); ++i) merged = clm::merge_tables(merged, clm::load_table(inputs[i]));
    if (o.at("out-cache").empty()) throw UsageError("--out-cache is required");
    clm::save_table(merged, o.at("out-cache"));
    Outcome out;
    out.result = {{"inputs", inputs}, {"output", o.at("out-cache")}, {"rows", merged.rows.size()}};
    return out;
}

// ---- wiring ------------------------------------------------------------------

struct Command {
    std::vector<std::string> path;  // e.g. {"cache", "build"}
    std::string help;
    std::vector<std::pair<std::string, std::string>> options;  // name, default
    Outcome (*run)(const Options&);
};

const std::vector<Command>& commands() {
    static const std::vector<Command> cmds = {
        {{"measure", "expect"},
         "certified E[f] under the measure",
         {{"group", "C2minus"}, {"S", "3"}, {"u", "1"}, {"f", "indicator-3-coprime"}, {"N", "0"}},
         cmd_measure_expect},
        {{"measure", "sample"},
         "draw module shapes",
         {{"group", "C2minus"}, {"S", "3"}, {"u", "1"}, {"count", "10000"}, {"seed", "1"}},
         cmd_measure_sample},
        {{"lseries", "verify"},
         "coefficient-exact Z_u and L-product identities",
         {{"group", "C4"},
          {"class-group", "C2xC2"},
          {"smax", "10000"},
          {"B", "10000"},
          {"max-uv", "3"},
          {"max-order", "2"},
          {"seed", "1"}},
         cmd_lseries_verify},
        {{"quartic", "density"},
         "certified density bracket and empirical ratio",
         {{"D", "1000000"}, {"x", "1e10"}, {"tP", "1e8"}, {"cache", ""}},
         cmd_quartic_density},
        {{"quartic", "count"},
         "exact count of cyclic quartic fields",
         {{"x", "1e10"}, {"d", ""}, {"tP", "1e8"}},
         cmd_quartic_count},
        {{"stickelberger"},
         "valuations of h(d) against beta(chi_d), Teichmuller units",
         {{"dmax", "10000"}, {"primes", "3,5,7,11,13"}, {"qmax", "101"}, {"precision", "4"}},
         cmd_stickelberger},
        {{"quadforms"},
         "class numbers of real quadratic fields into a CSV cache",
         {{"min", "1"}, {"max", "10000"}, {"cache", ""}, {"filter", "fundamental"}},
         cmd_quadforms},
        {{"lln"},
         "early hitters, adversarial spikes and the bounded suite",
         {{"dist", "geometric:0.5"}, {"n", "1000000"}, {"seed", "7"}, {"eps", "1,0.5,0.1,0.01"}},
         cmd_lln},
        {{"disprove-quartic"},
         "bracket for the class-number density of cyclic quartic fields",
         {{"D", "1000000"}, {"tP", "1e8"}, {"cache", ""}},
         cmd_disprove_quartic},
        {{"demo-c58"}, "L-ratio sequence for the order-29 component of C58",
         {{"cutoffs", "100,1000,10000"}, {"seed", "1"}}, cmd_demo_c58},
        {{"cache", "build"},
         "build or extend a class-number cache",
         {{"min", "1"}, {"max", "10000"}, {"cache", ""}, {"filter", "fundamental"}},
         cmd_cache_build},
        {{"cache", "verify"}, "recompute a random fraction of cache rows",
         {{"cache", ""}, {"fraction", "0.01"}, {"seed", "1"}}, cmd_cache_verify},
        {{"cache", "merge"}, "merge caches", {{"inputs", ""}, {"out-cache", ""}}, cmd_cache_merge},
    };
    return cmds;
}

// --config file.json: {"command": "measure expect", "<option>": value, ...}. Options on the
// command line win over the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (config.empty()) return args;
    std::ifstream is(config);
    if (!is) throw UsageError("cannot read config " + config);
    Json doc;
    try {
        doc = Json::parse(is);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("config must be a JSON object");
    std::vector<std::string> out = {args.at(0)};
    const bool has_command = args.size() > 1 && args[1].rfind("-", 0) != 0;
    if (!has_command) {
        if (!doc.contains("command")) throw UsageError("config has no command");
        for (const auto& tok : split(doc["command"].get<std::string>(), ' ')) out.push_back(tok);
    }
    out.insert(out.end(), args.begin() + 1, args.end());
    for (const auto& [key, value] : doc.items()) {
        if (key == "command") continue;
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
        if (given) continue;
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_array()) {
            for (const auto& v : value) text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        } else {
            text = value.dump();
        }
        out.push_back(flag);
        out.push_back(text);
    }
    return out;
}

int emit(const Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    os << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"clm-lab: Cohen-Lenstra-Martinet measures, L-series identities and quartic densities"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");

    std::map<const Command*, Options> stores;
    std::map<const Command*, CLI::App*> leaves;
    std::map<std::string, CLI::App*> groups;
    for (const auto& cmd : commands()) {
        CLI::App* parent = &app;
        for (std::size_t i = 0; i + 1 < cmd.path.size(); ++i) {
            auto& g = groups[cmd.path[i]];
            if (g == nullptr) {
                g = app.add_subcommand(cmd.path[i]);
                g->require_subcommand(1);
            }
            parent = g;
        }
        CLI::App* leaf = parent->add_subcommand(cmd.path.back(), cmd.help);
        Options& store = stores[&cmd];
        for (const auto& [name, def] : cmd.options) {
            store[name] = def;
            leaf->add_option("--" + name, store[name])->default_str(def);
        }
        leaf->add_option("--out", out_path, "write the JSON report here instead of stdout");
        leaves[&cmd] = leaf;
    }

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (const auto& cmd : commands()) {
        if (!leaves[&cmd]->parsed()) continue;
        const Options& opts = stores[&cmd];
        std::string name;
        for (const auto& p : cmd.path) name += (name.empty() ? "" : " ") + p;
        Json config = Json::object();
        for (const auto& [k, v] : opts) config[k] = v;
        try {
            Outcome res = cmd.run(opts);
            Json report = {{"tool", "clm-lab"},
                           {"version", kVersion},
                           {"command", name},
                           {"config", config},
                           {"ok", res.ok},
                           {"result", res.result}};
            const int rc = emit(report, out_path);
            if (rc != 0) return rc;
            if (!res.ok) {
                std::cerr << "invariant check failed in '" << name << "'\n";
                return 2;
            }
            return 0;
        } catch (const std::logic_error& e) {
            // invalid_argument, out_of_range (cache gaps), domain_error
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
