#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "torusfan/json_io.hpp"

using namespace torusfan;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result runCli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tempPath(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("torusfan_cli_" + name)).string();
}

std::string writeFile(const std::string& name, const std::string& text) {
    const std::string path = tempPath(name);
    std::ofstream(path) << text;
    return path;
}

std::string writePoset(const std::string& name, const SimplicialPoset& p) {
    return writeFile(name, posetToJson(p).dump());
}

}  // namespace

TEST_CASE("documented command examples") {
    const auto sphere = writePoset("sphere2.json", spherePoset(2));
    const auto r = runCli({"poset-hvector", sphere});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"f\":[2,2],\"h\":[1,0,1]}\n");

    const auto refused = runCli({"realize", "--target", "1,0,1,0,1"});
    CHECK(refused.code == 1);
    CHECK(refused.out == "{\"verdict\":\"inadmissible\"}\n");

    const auto boolean = writeFile("boolean2.json",
                                   R"({"rank":2,"cells":[{"id":0,"rank":0,"covers":[]},{"id":1,"rank":1,"covers":[0]},)"
                                   R"({"id":2,"rank":1,"covers":[0]},{"id":3,"rank":2,"covers":[1,2]}]})");
    CHECK(runCli({"poset-validate", boolean}).code == 0);
}

TEST_CASE("exit codes") {
    const auto broken = writeFile("broken.json", "{\"rank\": 2, \"cells\": [");
    const auto r = runCli({"poset-hvector", broken});
    CHECK(r.code == 2);
    CHECK(r.err.find("byte") != std::string::npos);

    CHECK(runCli({"poset-hvector", tempPath("missing.json")}).code == 2);
    CHECK(runCli({"no-such-command"}).code == 2);
    CHECK(runCli({}).code == 2);
    CHECK(runCli({"realize", "--target", "1,2,0"}).code == 2);
    CHECK(runCli({"realize", "--target", "1,x,1"}).code == 2);

    const auto schema = writeFile("schema.json", R"({"rank":1,"cells":[{"id":0,"rank":0,"covers":"x"}]})");
    const auto s = runCli({"poset-hvector", schema});
    CHECK(s.code == 2);
    CHECK(s.err.find("cells[0].covers") != std::string::npos);

    const auto invalid = writeFile("invalid.json", R"({"rank":2,"cells":[{"id":0,"rank":0,"covers":[]},)"
                                                   R"({"id":1,"rank":1,"covers":[0]},{"id":3,"rank":2,"covers":[1]}]})");
    const auto v = runCli({"poset-validate", invalid});
    CHECK(v.code == 1);
    CHECK(v.out.find("cover-count") != std::string::npos);

    const auto disc = writePoset("disc.json", simplexPoset(2));
    CHECK(runCli({"gorenstein-check", disc}).code == 1);
    CHECK(runCli({"gorenstein-check", writePoset("cp2.json", simplexBoundary(2))}).code == 0);
    CHECK(runCli({"hilbert-check", disc, "--dmax", "1"}).code == 2);
    CHECK(runCli({"charfun-find", writePoset("cp2b.json", simplexBoundary(2)), "--bound", "0"}).code == 2);
}

TEST_CASE("every subcommand runs and reports are stable") {
    const auto cp2 = writePoset("cp2c.json", simplexBoundary(2));
    const auto s2 = writePoset("s2c.json", spherePoset(2));
    const auto lambda = writeFile("lambda.json", R"({"1":[1,0],"2":[0,1],"3":[-1,-1]})");
    const std::vector<std::vector<std::string>> commands = {
        {"poset-validate", cp2},
        {"poset-hvector", cp2},
        {"poset-subdivide", cp2},
        {"poset-subdivide", cp2, "--mode", "stellar", "--at", "4"},
        {"poset-join", cp2, s2},
        {"poset-connectsum", cp2, s2, "--first-cell", "4", "--second-cell", "3"},
        {"poset-connectsum", cp2, s2, "--first-cell", "4", "--second-cell", "3", "--matching", "1:2,2:1"},
        {"poset-build", "--kind", "sphere-product", "--n", "3", "--k", "1"},
        {"homology", cp2, "--coeffs", "2"},
        {"homology", cp2, "--via-subdivision"},
        {"cm-check", cp2, "--fields", "Q,2"},
        {"gorenstein-check", s2},
        {"charfun-find", cp2, "--bound", "1"},
        {"charfun-check", cp2, lambda},
        {"gkm-report", cp2, lambda, "--dmax", "3", "--seed", "7"},
        {"gkm-report", s2},
        {"betti", cp2, lambda, "--field", "3"},
        {"present-ring", s2},
        {"sw-parity", cp2, lambda},
        {"hilbert-check", s2, "--dmax", "6"},
        {"ring-normalize", s2, "--expr", "v1 * v2 + 2 * v3"},
        {"realize", "--target", "1,2,2,1"},
    };
    for (const auto& cmd : commands) {
        INFO(cmd[0]);
        const auto a = runCli(cmd);
        const auto b = runCli(cmd);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_NOTHROW((void)parseJson(a.out));
        const auto text = runCli([&] {
            auto c = cmd;
            c.insert(c.end(), {"--format", "text"});
            return c;
        }());
        CHECK(text.code == 0);
    }
    CHECK(runCli({"ring-normalize", s2, "--expr", "v1 * v2"}).out.find("1 * v3 + 1 * v4") != std::string::npos);
    CHECK(runCli({"sw-parity", cp2, lambda}).out ==
          "{\"applicable\":true,\"pairing\":1,\"euler_characteristic\":3,\"euler_parity\":1,\"consistent\":true}\n");
}

TEST_CASE("output file and rank override") {
    const auto out = tempPath("report.json");
    const auto s2 = writePoset("s2d.json", spherePoset(2));
    CHECK(runCli({"poset-hvector", s2, "--output", out}).code == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "{\"f\":[2,2],\"h\":[1,0,1]}");

    const auto s3 = writePoset("s3.json", spherePoset(3));
    ::setenv("TORUSFAN_MAX_RANK", "2", 1);
    CHECK(runCli({"poset-hvector", s3}).code == 2);
    ::setenv("TORUSFAN_MAX_RANK", "nonsense", 1);
    CHECK(runCli({"poset-hvector", s3}).code == 2);
    ::unsetenv("TORUSFAN_MAX_RANK");
    CHECK(runCli({"poset-hvector", s3}).code == 0);
}

TEST_CASE("property: poset JSON round-trips through the canonical form") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 50; ++t) {
        const RawPoset raw = oracle::randomComplex(rng, 4, t % 2 == 0);
        const auto p = SimplicialPoset::fromRaw(raw);
        const Json first = posetToJson(p);
        const auto reparsed = SimplicialPoset::fromRaw(rawPosetFromJson(parseJson(first.dump())));
        CHECK(posetToJson(reparsed) == first);
        CHECK(posetToJson(SimplicialPoset::fromRaw(rawPosetFromJson(rawPosetToJson(raw)))) == first);

        const auto path = writeFile("rt.json", rawPosetToJson(raw).dump());
        CHECK(runCli({"poset-subdivide", path, "--mode", "stellar", "--at", std::to_string(p.id(p.size() - 1))})
                  .code == 0);
    }
}
