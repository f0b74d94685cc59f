#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mcf/cli.hpp"

namespace {

int run_cli(std::vector<const char*> args) {
    args.insert(args.begin(), "mcfloer");
    return mcf::cli::run(static_cast<int>(args.size()), args.data());
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("hf-std writes a full report and exits cleanly") {
    TempFile out("hf_std.json");
    CHECK(run_cli({"hf-std", "--N", "2", "--r", "2", "--out", out.path.c_str()}) == 0);
    const nlohmann::json report = read_json(out.path);
    CHECK(report["N"] == 2);
    CHECK(report["C"] == 1);
    CHECK(report["cohomology"]["0"] == 1);
    CHECK(report["input"]["type"] == "standard");
}

TEST_CASE("hf-loop consumes a path-spec file") {
    TempFile spec("loop_spec.json");
    TempFile out("hf_loop.json");
    {
        std::ofstream f(spec.path);
        f << R"({"type":"circle","basepoint":2,"center":[0.5,0.0],"radius":1.5})";
    }
    CHECK(run_cli({"hf-loop", "--N", "4", "--path", spec.path.c_str(), "--out",
                   out.path.c_str()}) == 0);
    const nlohmann::json report = read_json(out.path);
    CHECK(report["C"] == 1);
    CHECK(report["input"]["type"] == "circle");
    CHECK(report["counts"]["mode"] == "solve");
}

TEST_CASE("strips and verify subcommands produce their reports") {
    TempFile strips("strips.json");
    CHECK(run_cli({"strips", "--N", "3", "--r", "2", "--out", strips.path.c_str()}) == 0);
    const nlohmann::json sr = read_json(strips.path);
    CHECK(sr["indices"]["pq"] == -1);
    CHECK(sr["indices"]["qp"] == 3);
    CHECK(sr["strips"].size() == 5);  // 2 * 2^1 one-jump entries + 1 both-jump
    for (const auto& s : sr["strips"]) {
        if (s["direction"] == "both") {
            CHECK(s["maslov_combinatorial"] == 4);
        } else {
            CHECK(s["maslov_combinatorial"] == 3);
            CHECK(s["maslov_winding"] == s["maslov_combinatorial"]);
        }
    }

    TempFile verify("verify.json");
    CHECK(run_cli({"verify", "--N", "3", "--r", "2", "--out", verify.path.c_str()}) == 0);
    const nlohmann::json vr = read_json(verify.path);
    CHECK(vr["pass"] == true);
    CHECK(vr["residuals"]["immersion"].get<double>() < 1e-9);
    CHECK(vr["tolerances"].is_object());
}

TEST_CASE("seed is echoed into the report") {
    TempFile out("seeded.json");
    CHECK(run_cli({"hf-std", "--N", "1", "--r", "1", "--seed", "42", "--out",
                   out.path.c_str()}) == 0);
    CHECK(read_json(out.path)["seed"] == 42);
}

TEST_CASE("exit codes distinguish parse, validation, and numerical failures") {
    // Unknown flags and missing requireds are parse errors.
    CHECK(run_cli({"hf-std", "--N", "2"}) == 2);
    CHECK(run_cli({"hf-std", "--N", "2", "--r", "2", "--bogus"}) == 2);
    CHECK(run_cli({"nonsense"}) == 2);
    // Semantic validation: r out of range.
    CHECK(run_cli({"hf-std", "--N", "2", "--r", "5"}) == 2);
    // Unreadable path file.
    CHECK(run_cli({"hf-loop", "--N", "4", "--path", "does_not_exist.json"}) == 2);
    // Malformed loop: circle through a second critical value.
    TempFile spec("bad_loop.json");
    {
        std::ofstream f(spec.path);
        f << R"({"type":"circle","basepoint":1,"center":[1.5,0.0],"radius":0.5})";
    }
    CHECK(run_cli({"hf-loop", "--N", "4", "--path", spec.path.c_str()}) == 2);
}

} // TEST_SUITE
