// End-to-end tests of the plurilag command-line binary: exit-code contract,
// report formats, file formats, seeding, and determinism across job counts.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "plurilag/io.hpp"
#include "plurilag/propagate.hpp"
#include "plurilag/rng.hpp"
#include "plurilag/surface.hpp"

using namespace plurilag;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_raw(const std::string& cmd) {
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int status = pclose(p);
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = out;
    return r;
}

CmdResult run_cmd(const std::string& args, bool merge_stderr = false) {
    return run_raw(std::string(PLURILAG_CLI) + " " + args +
                   (merge_stderr ? " 2>&1" : " 2>/dev/null"));
}

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("plurilag_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    io::write_text(path.string(), text);
    return path.string();
}

// Drop the runtime line so reports from different runs can be compared.
std::string strip_runtime(const std::string& report) {
    std::string out;
    size_t pos = 0;
    while (pos < report.size()) {
        size_t eol = report.find('\n', pos);
        if (eol == std::string::npos) eol = report.size();
        const std::string line = report.substr(pos, eol - pos);
        if (line.find("runtime_ms") == std::string::npos) out += line + "\n";
        pos = eol + 1;
    }
    return out;
}

} // namespace

TEST_CASE("verify subcommand exit codes follow the contract") {
    CHECK(run_cmd("verify consistency --model q1d0 --trials 20 --seed 42").code == 0);
    // no Lagrangian layer for h1
    CHECK(run_cmd("verify consistency --model h1").code == 1);
    // unknown suite and unknown model are usage errors
    CHECK(run_cmd("verify nonsense --model q1d0").code == 1);
    CHECK(run_cmd("verify quad --model nosuch --trials 5").code == 1);
    CHECK(run_cmd("verify consistency --model q1d0 --trials 0").code == 1);
    // failing suite: perturbed legs break closedness
    CHECK(run_cmd("verify closedness --model q1d0 --trials 4 --perturb 1e-3 --seed 1").code == 2);
}

TEST_CASE("verify reports render in all three formats") {
    const auto human = run_cmd("verify quad --model h2 --trials 15 --seed 3 --format human");
    CHECK(human.code == 0);
    CHECK(human.out.find("result PASS") != std::string::npos);
    CHECK(human.out.find("route_spread") != std::string::npos);

    const auto js = run_cmd("verify quad --model h2 --trials 15 --seed 3 --format json");
    CHECK(js.code == 0);
    const auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["suite"] == "quad_layer");
    CHECK(doc["model"] == "h2");
    CHECK(doc["passed"] == true);
    CHECK(doc["trials"] == 15);

    const auto csv = run_cmd("verify quad --model h2 --trials 15 --seed 3 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("suite,model,trial,check,value\n", 0) == 0);
    CHECK(csv.out.find("quad_layer,h2,14,route_spread,") != std::string::npos);
}

TEST_CASE("verify honours --out, PLURILAG_SEED, and --tol") {
    const auto out_path = (scratch_dir() / "report.json").string();
    const auto direct =
        run_cmd("verify octahedron --model exp --trials 8 --seed 11 --format json");
    CHECK(direct.code == 0);
    const auto to_file = run_cmd("verify octahedron --model exp --trials 8 --seed 11 "
                                 "--format json --out " +
                                 out_path);
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    CHECK(strip_runtime(io::read_text(out_path)) == strip_runtime(direct.out));

    // env fallback matches an explicit --seed
    const auto env_run = run_raw("PLURILAG_SEED=11 " + std::string(PLURILAG_CLI) +
                                 " verify octahedron --model exp --trials 8 --format json "
                                 "2>/dev/null");
    CHECK(env_run.code == 0);
    CHECK(strip_runtime(env_run.out) == strip_runtime(direct.out));

    // an absurdly tight tolerance turns a passing suite into a failing one
    CHECK(run_cmd("verify consistency --model q1d0 --trials 10 --seed 2 --tol 1e-18").code == 2);
    CHECK(run_cmd("verify consistency --model q1d0 --trials 10 --seed 2 "
                  "--tol residual=1e-18")
              .code == 2);
    CHECK(run_cmd("verify consistency --model q1d0 --trials 10 --seed 2 --tol bogus=1").code ==
          1);
}

TEST_CASE("verify reports are byte-identical across reruns and job counts") {
    const std::string base = "verify consistency --model exp --trials 12 --seed 9 --format json";
    const auto a = run_cmd(base + " --jobs 1");
    const auto b = run_cmd(base + " --jobs 1");
    const auto c = run_cmd(base + " --jobs 3");
    CHECK(a.code == 0);
    CHECK(strip_runtime(a.out) == strip_runtime(b.out));
    CHECK(strip_runtime(a.out) == strip_runtime(c.out));

    const auto d = run_cmd("verify consistency --model exp --trials 12 --seed 10 --format json");
    CHECK(strip_runtime(a.out) != strip_runtime(d.out));
}

TEST_CASE("propagate reports sub-tolerance spread on random data") {
    const auto r = run_cmd("propagate --model h1 --box 4,4,4 --seed 1 --format json");
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["max_spread"].get<double>() < 1e-10);
    CHECK(doc["completions"] == 64);
    CHECK(doc["fields"]["values"].size() == 125);
    CHECK(doc["seed"] == 1);
}

TEST_CASE("propagate consumes an axis data file for the smallest box") {
    const std::string axes = write_scratch("cube.json", R"({"m": 3, "values": [
        {"at": [0,0,0], "value": 0.3}, {"at": [1,0,0], "value": 1.1},
        {"at": [0,1,0], "value": -0.8}, {"at": [0,0,1], "value": 0.9}]})");
    const auto r = run_cmd("propagate --model q1d0 --box 1,1,1 --data " + axes + " --format json");
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["fields"]["values"].size() == 8); // one full cube
    CHECK(doc["completions"] == 1);
    CHECK(doc["max_spread"].get<double>() < 1e-12);
    CHECK(!doc.contains("seed"));

    // same run in CSV: a header and one row per vertex
    const auto csv = run_cmd("propagate --model q1d0 --box 1,1,1 --data " + axes +
                             " --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("i,j,k,value\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 9);
}

TEST_CASE("propagate distinguishes malformed input from singular propagation") {
    // malformed file: parse error with location -> exit 1
    const std::string bad = write_scratch("bad.json", "{\"m\": 3, \"values\": [");
    const auto parse_fail = run_cmd("propagate --model q1d0 --box 1,1,1 --data " + bad, true);
    CHECK(parse_fail.code == 1);
    CHECK(parse_fail.out.find("bad.json") != std::string::npos);

    // well-formed but incomplete axis data -> exit 1, names the vertex
    const std::string partial = write_scratch("partial.json", R"({"m": 3, "values": [
        {"at": [0,0,0], "value": 0.3}, {"at": [1,0,0], "value": 1.1},
        {"at": [0,1,0], "value": -0.8}]})");
    const auto missing = run_cmd("propagate --model q1d0 --box 1,1,1 --data " + partial, true);
    CHECK(missing.code == 1);
    CHECK(missing.out.find("(0,0,1)") != std::string::npos);

    // singular data (equal neighbours degenerate the h1 solve) -> exit 2
    const std::string singular = write_scratch("singular.json", R"({"m": 3, "values": [
        {"at": [0,0,0], "value": 0.0}, {"at": [1,0,0], "value": 1.0},
        {"at": [0,1,0], "value": 1.0}, {"at": [0,0,1], "value": 0.5}]})");
    const auto sing = run_cmd("propagate --model h1 --box 1,1,1 --data " + singular, true);
    CHECK(sing.code == 2);
    CHECK(sing.out.find("degenerate") != std::string::npos);

    // usage errors
    CHECK(run_cmd("propagate --model q1d0 --box 0,2,2").code == 1);
    CHECK(run_cmd("propagate --model q1d0 --box 2,2").code == 1);
    CHECK(run_cmd("propagate --box 2,2,2").code == 1); // --model is required
}

TEST_CASE("action evaluates surface files and reports flips") {
    const std::string surface = write_scratch(
        "square.json", R"({"m": 2, "squares": [{"base": [0,0], "dirs": [1,2]}]})");
    const std::string fields = write_scratch("square_fields.json", R"({"m": 2, "values": [
        {"at": [0,0], "value": 0}, {"at": [1,0], "value": 1},
        {"at": [1,1], "value": 3}, {"at": [0,1], "value": 2}]})");

    // logarithmic model on the frozen square: -2 log 2
    const auto r = run_cmd("action --surface " + surface + " --fields " + fields +
                           " --model q1d0 --format json");
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["action"].get<double>() == doctest::Approx(-2 * std::log(2.0)).epsilon(1e-12));

    // the zero form integrates to zero
    const auto z = run_cmd("action --surface " + surface + " --fields " + fields +
                           " --model zero --format json");
    CHECK(nlohmann::json::parse(z.out)["action"].get<double>() == 0.0);

    // missing field value -> exit 1
    const std::string sparse = write_scratch("sparse_fields.json", R"({"m": 2, "values": [
        {"at": [0,0], "value": 0}, {"at": [1,0], "value": 1}, {"at": [1,1], "value": 3}]})");
    const auto miss =
        run_cmd("action --surface " + surface + " --fields " + sparse, true);
    CHECK(miss.code == 1);
    CHECK(miss.out.find("(0,1)") != std::string::npos);

    // dimension mismatch -> exit 1
    const std::string wrong_dim = write_scratch("dim3_fields.json", R"({"m": 3, "values": [
        {"at": [0,0,0], "value": 0}]})");
    CHECK(run_cmd("action --surface " + surface + " --fields " + wrong_dim).code == 1);
}

TEST_CASE("action --flip reports near-zero action changes on a propagated solution") {
    // build a staircase surface and a propagated q1d0 box solution for it
    const auto surf = lattice::terrace_surface(2, 2, 2);
    const auto surface_path = write_scratch("terrace.json", io::surface_to_json(surf));

    const auto model = models::QuadModel::by_name("q1d0");
    Rng rng(5);
    const auto axes = solve::sample_axes(model, {2, 2, 2}, rng);
    const auto box = solve::propagate_box(model, {2, 2, 2}, axes, {1.0, 2.0, 3.0});
    const auto fields_path = write_scratch("terrace_fields.json", io::fields_to_json(box.fields));

    const auto r = run_cmd("action --surface " + surface_path + " --fields " + fields_path +
                           " --model q1d0 --flip 4 --seed 2 --format json");
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["flips"].size() == 4);
    for (const auto& f : doc["flips"]) CHECK(std::abs(f["delta"].get<double>()) < 1e-8);
    CHECK(std::abs(doc["final_action"].get<double>() - doc["action"].get<double>()) < 1e-7);

    // the same flips in human output, one dS line each
    const auto human = run_cmd("action --surface " + surface_path + " --fields " + fields_path +
                               " --model q1d0 --flip 4 --seed 2");
    CHECK(human.code == 0);
    CHECK(human.out.find("flip 4:") != std::string::npos);
}

TEST_CASE("surface files round-trip and reject malformed content") {
    const auto surf = lattice::terrace_surface(2, 1, 1);
    const auto path = write_scratch("roundtrip.json", io::surface_to_json(surf));
    const auto loaded = io::load_surface(path);
    CHECK(loaded.dim() == surf.dim());
    CHECK(loaded.squares() == surf.squares());

    const auto bad_square = write_scratch(
        "bad_square.json", R"({"m": 2, "squares": [{"base": [0,0], "dirs": [1,1]}]})");
    CHECK_THROWS_AS((void)io::load_surface(bad_square), ParseError);
    try {
        (void)io::load_surface(bad_square);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("squares[0]") != std::string::npos);
    }

    const auto bad_base = write_scratch(
        "bad_base.json", R"({"m": 2, "squares": [{"base": [0], "dirs": [1,2]}]})");
    CHECK_THROWS_AS((void)io::load_surface(bad_base), ParseError);

    const auto dup = write_scratch("dup_fields.json", R"({"m": 1, "values": [
        {"at": [0], "value": 1}, {"at": [0], "value": 2}]})");
    CHECK_THROWS_AS((void)io::load_fields(dup), ParseError);

    // fields round-trip preserves values and sorts vertices deterministically
    forms::FieldMap f(2);
    f.set(lattice::MultiIndex({1, 0}), 0.25);
    f.set(lattice::MultiIndex({0, 0}), -1.5);
    const auto fpath = write_scratch("f_roundtrip.json", io::fields_to_json(f));
    const auto g = io::load_fields(fpath);
    CHECK(g.size() == 2);
    CHECK(g.at(lattice::MultiIndex({1, 0})) == 0.25);
    CHECK(io::fields_to_json(g) == io::fields_to_json(f));
}
