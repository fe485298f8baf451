#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grapde/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli() {
    const char* env = std::getenv("GRAPDE_CLI");
    REQUIRE_MESSAGE(env != nullptr, "GRAPDE_CLI must point at the built binary");
    return env;
}

int run(const std::string& args) {
    std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path tmpdir() {
    fs::path d = fs::temp_directory_path() / "grapde_cli_test";
    fs::create_directories(d);
    return d;
}

json load(const fs::path& p) { return json::parse(grapde::io::read_file(p.string())); }

json schema(const char* name) {
    fs::path root = fs::path(__FILE__).parent_path().parent_path();
    return json::parse(grapde::io::read_file((root / "schema" / name).string()));
}

} // namespace

TEST_CASE("gen then spectrum reproduces lambda1 = 2 for P2") {
    fs::path d = tmpdir();
    fs::path g = d / "p2.json";
    fs::path out = d / "spec.json";
    REQUIRE(run("gen --family path --n 2 --out " + g.string()) == 0);

    // the written graph matches the schema and the library parser
    json gj = load(g);
    std::string err;
    CHECK(grapde::io::validate_schema(gj, schema("graph.schema.json"), err));
    CHECK(gj["vertices"] == 2);

    REQUIRE(run("spectrum --graph " + g.string() + " --out " + out.string()) == 0);
    json sj = load(out);
    CHECK(grapde::io::validate_schema(sj, schema("spectrum.schema.json"), err));
    CHECK(grapde::io::validate_schema(sj["manifest"], schema("manifest.schema.json"), err));
    CHECK(std::abs(sj["lambda1"].get<double>() - 2.0) <= 1e-9);
    CHECK(sj["multiplicity"] == 1);
}

TEST_CASE("gen writes edge lists that parse back") {
    fs::path d = tmpdir();
    fs::path g = d / "p4.txt";
    REQUIRE(run("gen --family path --n 4 --format edgelist --out " + g.string()) == 0);
    grapde::WeightedGraph parsed = grapde::graph_from_edgelist(grapde::io::read_file(g.string()));
    CHECK(parsed.n == 4);
    CHECK(parsed.edges.size() == 3);
    // spectrum accepts the text format directly
    CHECK(run("spectrum --graph " + g.string()) == 0);
}

TEST_CASE("solve: closed-form J3 instance, report schema, CSV, determinism") {
    fs::path d = tmpdir();
    fs::path g = d / "p3.json";
    REQUIRE(run("gen --family path --n 3 --out " + g.string()) == 0);

    fs::path om = d / "om.json";
    grapde::io::write_file(om.string(), "{\"omega\": [0, 1]}\n");
    fs::path mj = d / "j3.json";
    grapde::io::write_file(mj.string(),
                           "{\"tag\": \"j3_dirichlet\", \"params\": {\"p\": 3, \"q\": 3}}\n");

    fs::path out1 = d / "rep1.json", out2 = d / "rep2.json", csv = d / "rep.csv";
    std::string base = "solve --model " + mj.string() + " --graph " + g.string() + " --omega " +
                       om.string() + " --tol 1e-10 --seed 7";
    REQUIRE(run(base + " --out " + out1.string() + " --csv " + csv.string()) == 0);
    REQUIRE(run(base + " --out " + out2.string()) == 0);

    json r1 = load(out1), r2 = load(out2);
    std::string err;
    CHECK_MESSAGE(grapde::io::validate_schema(r1, schema("solve.schema.json"), err), err);
    CHECK(r1["result"]["status"] == "converged");
    CHECK(std::abs(r1["result"]["u"][0].get<double>() - std::pow(2.0, 0.25)) <= 1e-8);
    CHECK(r1["result"]["critical_value"].get<double>() > 0.0);
    CHECK(r1["audit"]["verdict"] == "pass");

    // byte-identical after zeroing the wall time
    r1["manifest"]["wall_time_ms"] = 0.0;
    r2["manifest"]["wall_time_ms"] = 0.0;
    CHECK(r1.dump() == r2.dump());

    // CSV: fixed header and one line per vertex
    std::string text = grapde::io::read_file(csv.string());
    CHECK(text.rfind("vertex,u,v,residual_u,residual_v\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("exhaust: schema and window decay") {
    fs::path d = tmpdir();
    fs::path out = d / "exh.json";
    REQUIRE(run("exhaust --family path --K 4 --window 4,5,6 --out " + out.string()) == 0);
    json r = load(out);
    std::string err;
    CHECK_MESSAGE(grapde::io::validate_schema(r, schema("exhaust.schema.json"), err), err);
    CHECK(r["ball_sizes"].size() == 4);
    CHECK(r["window_diffs"].size() == 3);
}

TEST_CASE("check: smp verdicts and exit codes") {
    fs::path d = tmpdir();
    fs::path in = d / "smp.json";
    // u = 0, v = 0 on P3 passes
    grapde::io::write_file(in.string(), R"({
      "graph": {"vertices": 3, "edges": [[0,1,1.0],[1,2,1.0]]},
      "u": 0.0, "v": 0.0, "h1": 0.0, "h2": 0.0, "p": 2.0, "q": 2.0})");
    fs::path out = d / "chk.json";
    CHECK(run("check --what smp --in " + in.string() + " --out " + out.string()) == 0);
    json r = load(out);
    std::string err;
    CHECK_MESSAGE(grapde::io::validate_schema(r, schema("check.schema.json"), err), err);
    CHECK(r["verdict"] == "pass");

    // hypothesis violation exits 2
    grapde::io::write_file(in.string(), R"({
      "graph": {"vertices": 3, "edges": [[0,1,1.0],[1,2,1.0]]},
      "u": [0.0, 0.5, 1.0], "v": 1.0, "h1": 0.0, "h2": 0.0, "p": 2.0, "q": 2.0})");
    CHECK(run("check --what smp --in " + in.string() + " --out " + out.string()) == 2);
    CHECK(load(out)["verdict"] == "hypothesis-violated");
}

TEST_CASE("solution check on a solve report") {
    fs::path d = tmpdir();
    fs::path g = d / "k3.json";
    REQUIRE(run("gen --family complete --n 3 --out " + g.string()) == 0);
    fs::path mj = d / "j6.json";
    grapde::io::write_file(mj.string(), "{\"tag\": \"j6_global\"}\n");
    fs::path rep = d / "j6rep.json";
    REQUIRE(run("solve --model " + mj.string() + " --graph " + g.string() + " --out " +
                rep.string() + " --tol 1e-10") == 0);
    fs::path out = d / "sol_chk.json";
    CHECK(run("check --what solution --in " + rep.string() + " --out " + out.string()) == 0);
    CHECK(load(out)["verdict"] == "pass");
}

TEST_CASE("usage and IO errors exit 1") {
    CHECK(run("spectrum --graph /nonexistent/missing.json") == 1);
    CHECK(run("frobnicate") != 0);
    fs::path d = tmpdir();
    fs::path bad = d / "bad.json";
    grapde::io::write_file(bad.string(), "{\"vertices\": 2, \"edges\": [[0,1,");
    CHECK(run("spectrum --graph " + bad.string()) == 1);
}
