#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

fs::path workdir() {
    const auto dir = fs::temp_directory_path() / "clm-cli-unit";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = "CLM_LAB_CACHE_DIR='" + (workdir() / "cache").string() + "' '" CLM_LAB_PATH "' " + args +
                            " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

nlohmann::json report(const fs::path& p) {
    std::ifstream is(p);
    return nlohmann::json::parse(is);
}

}  // namespace

TEST_CASE("cli: measure expect against the closed form") {
    const auto out = workdir() / "measure.json";
    REQUIRE(run("measure expect --f indicator-3-coprime --group C2minus --u 1 --S 3 --out '" + out.string() + "'") == 0);
    const auto doc = report(out);
    CHECK(doc.at("ok").get<bool>());
    CHECK(doc.at("command") == "measure expect");
    CHECK(doc.at("config").at("group") == "C2minus");
    const double lo = doc.at("result").at("bracket").at("lower");
    const double hi = doc.at("result").at("bracket").at("upper");
    double closed = 1.0;
    for (int k = 2; k < 60; ++k) closed *= 1.0 - std::pow(3.0, -k);
    CHECK(lo <= closed + 1e-12);
    CHECK(closed <= hi + 1e-12);
}

TEST_CASE("cli: usage errors") {
    CHECK(run("measure expect --S all") == 1);
    CHECK(run("no-such-command") == 1);
    CHECK(run("lln --n banana") == 1);
    CHECK(run("") == 1);
}

TEST_CASE("cli: config file, command line wins") {
    const auto cfg = workdir() / "cfg.json";
    const auto out = workdir() / "cfg-out.json";
    {
        std::ofstream os(cfg);
        os << R"({"command": "lln", "n": 20000, "seed": 3, "eps": [1, 0.5]})";
    }
    REQUIRE(run("--config '" + cfg.string() + "' --seed 5 --out '" + out.string() + "'") == 0);
    const auto doc = report(out);
    CHECK(doc.at("command") == "lln");
    CHECK(doc.at("config").at("seed") == "5");
    CHECK(doc.at("config").at("n") == "20000");
    CHECK(run("--config '" + (workdir() / "missing.json").string() + "'") == 1);
}

TEST_CASE("cli: cache build, verify, merge") {
    const auto a = workdir() / "a.csv", b = workdir() / "b.csv", m = workdir() / "m.csv";
    for (const auto& p : {a, b, m}) fs::remove(p);
    REQUIRE(run("cache build --min 1 --max 2000 --cache '" + a.string() + "'") == 0);
    REQUIRE(run("cache build --min 2001 --max 4000 --cache '" + b.string() + "'") == 0);
    CHECK(run("cache verify --fraction 1 --cache '" + a.string() + "'") == 0);
    const auto out = workdir() / "merge.json";
    REQUIRE(run("cache merge --inputs '" + a.string() + "," + b.string() + "' --out-cache '" + m.string() +
                "' --out '" + out.string() + "'") == 0);
    CHECK(report(out).at("ok").get<bool>());

    // flip one class number and expect the invariant exit code
    std::ifstream is(a);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto pos = text.find("\n229,3,3,");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\n229,3,1,");
    std::ofstream(a) << text;
    CHECK(run("cache verify --fraction 1 --cache '" + a.string() + "'") == 2);
}

TEST_CASE("cli: quadforms and quartic count") {
    const auto out = workdir() / "count.json";
    REQUIRE(run("quartic count --x 125 --out '" + out.string() + "'") == 0);
    CHECK(report(out).at("result").at("count") == 1);
    CHECK(run("quadforms --min 1 --max 500 --cache '" + (workdir() / "q.csv").string() + "'") == 0);
}
