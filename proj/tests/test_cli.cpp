// Copyright 2026 The octodeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oct/cli.hpp"
#include "oct/errors.hpp"
#include "oct/octonion.hpp"

using namespace oct;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

json parse_output(const CliResult& r) {
    REQUIRE_FALSE(r.out.empty());
    return json::parse(r.out);
}

double max_abs_diff(const Octonion& a, const Octonion& b) {
    double m = 0.0;
    for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(a.x[i] - b.x[i]));
    return m;
}

}  // namespace

TEST_CASE("octonion literals") {
    // Component form.
    CHECK(cli::parse_octonion("1,2,3,4,5,6,7,8") ==
          Octonion(1, 2, 3, 4, 5, 6, 7, 8));
    // Signed sums of scalar and unit terms.
    CHECK(cli::parse_octonion("0") == Octonion{});
    CHECK(cli::parse_octonion("2.5") == Octonion(2.5));
    CHECK(cli::parse_octonion("e3") == Octonion::e(3));
    CHECK(cli::parse_octonion("-e7") == -Octonion::e(7));
    CHECK(cli::parse_octonion("2*e1") == Octonion::e(1) * 2.0);
    CHECK(cli::parse_octonion("1+e1") == Octonion(1.0) + Octonion::e(1));
    CHECK(cli::parse_octonion("1 - 0.5*e2 + e4") ==
          Octonion(1.0) - Octonion::e(2) * 0.5 + Octonion::e(4));
    // A unit factor requires the explicit '*': "2e3" is the float 2000.
    CHECK(cli::parse_octonion("2e3") == Octonion(2000.0));

    CHECK_THROWS_AS(cli::parse_octonion(""), usage_error);
    CHECK_THROWS_AS(cli::parse_octonion("e0"), usage_error);
    CHECK_THROWS_AS(cli::parse_octonion("e8"), usage_error);
    CHECK_THROWS_AS(cli::parse_octonion("2*"), usage_error);
    CHECK_THROWS_AS(cli::parse_octonion("1,2,3"), usage_error);
    CHECK_THROWS_AS(cli::parse_octonion("abc"), usage_error);
}

TEST_CASE("field and surface specs") {
    CHECK(cli::parse_field("identity").name == "identity");
    CHECK(cli::parse_field("sum_squares(3)").name == "sum_squares(3)");
    const OctonionField c = cli::parse_field("constant(1+e1)");
    CHECK(max_abs_diff(c.evaluate(Octonion{}),
                       Octonion(1.0) + Octonion::e(1)) == 0.0);
    CHECK_THROWS_AS(cli::parse_field("bogus(1)"), usage_error);
    CHECK_THROWS_AS(cli::parse_field("sum_squares(1,2)"), usage_error);

    const ParamSurface s = cli::parse_surface("sphere(1,0,0,0,0,0,0,0;2)");
    CHECK(s.kind() == ParamSurface::Kind::sphere);
    CHECK(s.eps() == 2.0);
    CHECK(s.core().a == Octonion(1.0));

    const ParamSurface t = cli::parse_surface("tube(circle;e1,e2;1.0;0.2)");
    CHECK(t.kind() == ParamSurface::Kind::tube);
    CHECK(t.core().kind == CoreManifold::Kind::circle);
    CHECK(t.eps() == 0.2);

    const ParamSurface k = cli::parse_surface("tube(ksphere;4;1.5;0.3)");
    CHECK(k.core().kind == CoreManifold::Kind::k_sphere);
    CHECK(k.core().k == 4);

    const ParamSurface g = cli::parse_surface(
        "tube(segment;0,0,0,0,0,0,0,0;0,0,0,2,0,0,0,0;0.25)");
    CHECK(g.core().kind == CoreManifold::Kind::segment);
    CHECK(g.charts().size() == 3);

    // Centers are plain octonion literals, so a one-term center is fine.
    const ParamSurface lit = cli::parse_surface("sphere(1;2)");
    CHECK(lit.core().a == Octonion(1.0));
    CHECK(lit.eps() == 2.0);

    CHECK_THROWS_AS(cli::parse_surface("cube(1)"), usage_error);
    CHECK_THROWS_AS(cli::parse_surface("sphere(1)"), usage_error);
    CHECK_THROWS_AS(cli::parse_surface("sphere(1;2;3)"), usage_error);
    CHECK_THROWS_AS(cli::parse_surface("tube(circle;e1,e1;1;0.2)"),
                    usage_error);

    const ZeroSpec z =
        cli::parse_zero("point(1,1,1,1,1,1,1,1;0.3;nodes=4,4,4,4,4,4,4)");
    CHECK(z.kind == ZeroSpec::Kind::isolated_point);
    CHECK(z.eps == 0.3);
    REQUIRE(z.nodes_override.has_value());
    CHECK((*z.nodes_override)[0] == 4);

    const ZeroSpec v = cli::parse_zero("tube(circle;e1,e2;1;0.1)");
    CHECK(v.kind == ZeroSpec::Kind::variety);
    CHECK(v.eps == 0.1);
}

TEST_CASE("winding example emits the documented json schema") {
    const CliResult r = run_cli({"winding", "--surface",
                                 "sphere(0,0,0,0,0,0,0,0;1)", "--point", "0"});
    CHECK(r.code == cli::kExitPass);
    const auto j = nlohmann::ordered_json::parse(r.out);
    const std::vector<std::string> want_keys = {
        "schema",   "command",  "inputs",     "raw",        "scalar",
        "rounded",  "residual", "node_count", "runtime_ms", "verdict"};
    std::vector<std::string> got_keys;
    for (auto it = j.begin(); it != j.end(); ++it) got_keys.push_back(it.key());
    CHECK(got_keys == want_keys);

    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "winding");
    CHECK(j["rounded"] == 1);
    CHECK(j["verdict"] == "pass");
    CHECK(j["node_count"] == 2097152);
    CHECK(j["raw"].size() == 8);
    CHECK(std::abs(j["raw"][0].get<double>() - 1.0) < 1e-3);
}

TEST_CASE("unknown field exits 2 and lists the catalog") {
    const CliResult r = run_cli({"order", "--field", "bogus(1)", "--nodes",
                                 "2"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("sum_squares") != std::string::npos);
    CHECK(r.err.find("hempfling") != std::string::npos);
    CHECK(r.err.find("identity") != std::string::npos);
}

TEST_CASE("usage errors from the parser exit 2") {
    CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run_cli({"winding"}).code == cli::kExitUsage);  // missing --surface
    CHECK(run_cli({"winding", "--surface", "sphere(0,0,0,0,0,0,0,0;1)",
                   "--bogus-flag"})
              .code == cli::kExitUsage);
    CHECK(run_cli({"order", "--field", "identity", "--method", "sideways",
                   "--nodes", "2"})
              .code == cli::kExitUsage);
    CHECK(run_cli({"winding", "--surface", "sphere(0,0,0,0,0,0,0,0;0)"})
              .code == cli::kExitUsage);
}

TEST_CASE("contract violations exit 3") {
    // Tube thicker than the core circle's reach.
    const CliResult r =
        run_cli({"tube-order", "--field", "circle_variety", "--core",
                 "circle(e1,e2;0.2)", "--eps", "0.3", "--nodes", "2"});
    CHECK(r.code == cli::kExitContract);
    CHECK(r.err.find("self-intersects") != std::string::npos);

    // Target value lying on the integration surface.
    const CliResult z = run_cli({"order", "--field", "constant(0)",
                                 "--center", "0", "--radius", "0.5",
                                 "--nodes", "2"});
    CHECK(z.code == cli::kExitContract);
}

TEST_CASE("repeat runs are byte-identical modulo runtime") {
    // Six nodes per axis is the smallest uniform count whose winding
    // residual clears the integer tolerance on the unit sphere.
    const std::vector<std::string> cmd = {
        "winding", "--surface", "sphere(0,0,0,0,0,0,0,0;1)",
        "--point",  "0",        "--nodes",
        "6"};
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    CHECK(a.code == cli::kExitPass);
    auto ja = json::parse(a.out);
    auto jb = json::parse(b.out);
    ja.erase("runtime_ms");
    jb.erase("runtime_ms");
    CHECK(ja.dump() == jb.dump());

    // The reduction order is fixed, so thread counts cannot shift a bit.
    std::vector<std::string> one = cmd, many = cmd;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "7"});
    auto jo = json::parse(run_cli(one).out);
    auto jm = json::parse(run_cli(many).out);
    jo.erase("runtime_ms");
    jm.erase("runtime_ms");
    CHECK(jo.dump() == jm.dump());
}

TEST_CASE("table lists all 49 imaginary-unit products") {
    const CliResult r = run_cli({"table"});
    CHECK(r.code == cli::kExitPass);
    const json j = parse_output(r);
    CHECK(j["verdict"] == "pass");
    CHECK(j["node_count"] == 64);  // entries checked, incl. the unit row/col
    const auto& entries = j["report"]["entries"];
    REQUIRE(entries.size() == 49);
    // Spot checks: e1*e1 = -1, e1*e2 = e4, e2*e1 = -e4, e4*e3 = e7.
    for (const auto& row : entries) {
        const int i = row["i"].get<int>();
        const int jj = row["j"].get<int>();
        const std::string p = row["product"].get<std::string>();
        if (i == 1 && jj == 1) CHECK(p == "-1");
        if (i == 1 && jj == 2) CHECK(p == "e4");
        if (i == 2 && jj == 1) CHECK(p == "-e4");
        if (i == 4 && jj == 3) CHECK(p == "e7");
    }
}

TEST_CASE("help round-trips for the app and every subcommand") {
    const CliResult top = run_cli({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("octodeg") != std::string::npos);

    for (const std::string sub :
         {"table", "check-cr", "winding", "order", "tube-order", "argument",
          "rouche", "hurwitz", "oracle"}) {
        const CliResult r = run_cli({sub, "--help"});
        CHECK(r.code == 0);
        // Subcommand help, not the top-level summary.
        CHECK(r.out.find(sub) != std::string::npos);
    }
}

TEST_CASE("every embedded help example runs cleanly") {
    const std::vector<std::vector<std::string>> examples = {
        {"check-cr", "--field", "sum_squares(3)", "--points", "50"},
        {"winding", "--surface", "sphere(0,0,0,0,0,0,0,0;1)", "--point", "0"},
        {"order", "--field", "identity", "--center", "0", "--radius", "0.5"},
        {"tube-order", "--field", "circle_variety", "--core",
         "circle(e1,e2;1)", "--eps", "0.2", "--nodes", "4,16,16,4,4,4,4"},
        {"argument", "--field", "hempfling", "--boundary",
         "sphere(1,1,1,1,1,1,1,1;0.5)", "--zeros",
         "point(1,1,1,1,1,1,1,1;0.3;nodes=8,8,8,8,8,8,8)", "--nodes",
         "16,8,8,8,8,8,8"},
        {"rouche", "--field", "constant(3)", "--perturbed", "constant(3.01)",
         "--boundary", "sphere(0,0,0,0,0,0,0,0;1)", "--nodes", "4"},
        {"hurwitz", "--family", "constant_inverse_n", "--nmax", "10000000000",
         "--region", "ball(0;0.5)", "--nodes", "4"},
        {"oracle", "--field", "identity", "--center", "0", "--radius", "0.5",
         "--starts", "32"},
    };
    for (const auto& ex : examples) {
        const CliResult r = run_cli(ex);
        INFO("example: ", ex[0]);
        CHECK(r.code == cli::kExitPass);
        CHECK(parse_output(r)["verdict"] == "pass");
    }
}

TEST_CASE("text output renders one field per line") {
    const CliResult r = run_cli({"order", "--field", "constant(5)", "--a",
                                 "0", "--nodes", "2", "--output", "text"});
    CHECK(r.code == cli::kExitPass);
    CHECK(r.out.find("command: order") != std::string::npos);
    CHECK(r.out.find("rounded: 0") != std::string::npos);
    CHECK(r.out.find("verdict: pass") != std::string::npos);
}

TEST_CASE("failed perturbation hypothesis exits 1") {
    const CliResult r =
        run_cli({"rouche", "--field", "constant(1)", "--perturbed",
                 "constant(3)", "--boundary", "sphere(0,0,0,0,0,0,0,0;1)",
                 "--nodes", "2"});
    CHECK(r.code == cli::kExitVerdictFail);
    const json j = parse_output(r);
    CHECK(j["verdict"] == "fail");
    CHECK(j["report"]["hypothesis_ok"] == false);
}

TEST_CASE("residual side checks judge claims, not absolutes") {
    // The counterexample field is regular on neither side; the catalog says
    // so, and agreement is a pass.
    const CliResult both = run_cli({"check-cr", "--field",
                                    "module_counterexample", "--points",
                                    "40"});
    CHECK(both.code == cli::kExitPass);
    const json j = parse_output(both);
    CHECK(j["report"]["claimed"] == "none");
    CHECK(j["report"]["observed"] == "none");

    const CliResult left = run_cli({"check-cr", "--field", "sum_squares(3)",
                                    "--side", "left", "--points", "40"});
    CHECK(left.code == cli::kExitPass);

    const CliResult seeded =
        run_cli({"check-cr", "--field", "hempfling", "--points", "50",
                 "--seed", "123"});
    CHECK(seeded.code == cli::kExitPass);
    CHECK(parse_output(seeded)["report"]["observed"] == "both");
}

TEST_CASE("oracle subcommand reports its preimage search") {
    const CliResult r = run_cli({"oracle", "--field", "sum_squares(7)",
                                 "--center", "0", "--radius", "0.5",
                                 "--starts", "64"});
    CHECK(r.code == cli::kExitPass);
    const json j = parse_output(r);
    CHECK(j["report"]["conclusive"] == true);
    CHECK(j["report"]["degree"] == 2);
    CHECK(j["report"]["perturbed"] == true);
    CHECK(j["rounded"] == 2);
}

TEST_CASE("hurwitz subcommand classifies the constant families") {
    const CliResult a =
        run_cli({"hurwitz", "--family", "constant_inverse_n", "--nmax",
                 "10000000000", "--region", "ball(0;0.5)", "--nodes", "2"});
    CHECK(a.code == cli::kExitPass);
    CHECK(parse_output(a)["report"]["branch"] == "identically_zero");

    const CliResult b =
        run_cli({"hurwitz", "--family", "constant_one_plus_inverse_n",
                 "--nmax", "10000000000", "--region", "ball(0;0.5)",
                 "--nodes", "4"});
    CHECK(b.code == cli::kExitPass);
    CHECK(parse_output(b)["report"]["branch"] == "order_sum_zero");

    CHECK(run_cli({"hurwitz", "--family", "unknown_family", "--nodes", "2"})
              .code == cli::kExitUsage);
}
