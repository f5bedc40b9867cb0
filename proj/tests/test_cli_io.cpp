#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "falsify/config.hpp"
#include "falsify/report.hpp"
#include "falsify/svg.hpp"

using namespace falsify;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("falsify_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::string error_of(std::string_view text) {
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("load_config") {
    SUBCASE("built-in name") {
        const auto cfg = load_config("corner");
        CHECK(cfg.scenario == corner_scenario());
        CHECK(cfg.swarm == SwarmParams{});
    }
    SUBCASE("omitted PSO fields take module defaults") {
        const auto cfg = parse_config(R"({"obstacles": [{"x_min": 1, "y_min": 1, "x_max": 2, "y_max": 2}]})");
        CHECK(cfg.swarm.inertia_weight == 0.7298);
        CHECK(cfg.swarm.cognitive_coefficient == 1.49618);
        CHECK(cfg.swarm.swarm_size == 60);
        CHECK(cfg.scenario.rover == RoverParams{});
        CHECK(cfg.scenario.bounds == Scenario::default_bounds(cfg.scenario.map, cfg.scenario.rover));
    }
    SUBCASE("overrides") {
        const auto cfg = parse_config(
            R"({"name": "x", "rover": {"radius": 0.1}, "pso": {"swarm_size": 12, "seed": 9}})");
        CHECK(cfg.scenario.name == "x");
        CHECK(cfg.scenario.rover.radius == 0.1);
        CHECK(cfg.swarm.swarm_size == 12);
        CHECK(cfg.swarm.seed == 9);
    }
    SUBCASE("inverted obstacle is rejected with the named invariant") {
        const auto msg = error_of(R"({"obstacles": [{"x_min": 2, "y_min": 1, "x_max": 1, "y_max": 2}]})");
        CHECK(msg.find("obstacles[0]") != std::string::npos);
        CHECK(msg.find("x_min < x_max") != std::string::npos);
    }
    SUBCASE("bounds dimension") {
        const auto msg = error_of(R"({"bounds": {"lower": [0, 0, 0], "upper": [1, 1, 1]}})");
        CHECK(msg.find("bounds dimension must be 6") != std::string::npos);
    }
    SUBCASE("syntax errors report line and column") {
        const auto msg = error_of("{\n  \"name\": \"a\",\n  \"rover\": {\"radius\": }\n}");
        CHECK(msg.find("cfg.json:3:") != std::string::npos);
        CHECK(msg.find("parse error") != std::string::npos);
    }
    SUBCASE("field type and unknown field diagnostics") {
        CHECK(error_of(R"({"rover": {"radius": "big"}})").find("rover.radius: expected a number") !=
              std::string::npos);
        CHECK(error_of(R"({"pso": {"swarm_sise": 3}})").find("pso.swarm_sise: unknown field") !=
              std::string::npos);
        CHECK(error_of(R"({"pso": {"swarm_size": 1}})").find("swarm_size must be >= 2") !=
              std::string::npos);
    }
    SUBCASE("unknown name and missing file") {
        CHECK_THROWS_AS(load_config("/nonexistent/scenario.json"), ConfigError);
    }
    SUBCASE("file on disk") {
        const auto dir = scratch_dir("cfgfile");
        std::ofstream(dir / "mine.json") << R"({"arena": {"x_min": 0, "y_min": 0, "x_max": 2, "y_max": 2}})";
        const auto cfg = load_config((dir / "mine.json").string());
        CHECK(cfg.scenario.name == "mine");
        CHECK(cfg.scenario.map.arena == Rect{0, 0, 2, 2});
    }
}

TEST_CASE("config round-trip") {
    Scenario s = corner_scenario();
    SwarmParams p;
    p.seed = 12345678901234ULL;
    p.max_iterations = 77;
    CHECK(parse_config(serialize_config(s, p)).scenario == s);
    CHECK(parse_config(serialize_config(s, p)).swarm == p);

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        Scenario r = corner_scenario();
        r.name = "random-" + std::to_string(i);
        r.rover.radius = 0.05 + 0.1 * u(gen);
        r.controller.kp = 1 + 5 * u(gen);
        r.controller.blend_alpha = u(gen);
        r.map.obstacles.push_back({u(gen), u(gen), 1 + u(gen), 1 + u(gen)});
        r.bounds.lower[2] = -u(gen);
        const auto back = parse_config(serialize_config(r, p));
        CHECK(back.scenario == r);
    }
}

namespace {

CampaignReport small_campaign(const Scenario& sc, std::size_t runs) {
    SwarmParams params;
    params.max_iterations = 300;
    params.seed = 21;
    return run_campaign(sc, params, runs);
}

}  // namespace

TEST_CASE("emit_report") {
    const Scenario sc = corner_scenario();
    const auto report = small_campaign(sc, 4);
    const auto dir = scratch_dir("emit");
    const auto files = emit_report(report, sc, dir, true);

    CHECK(files.svgs.size() == 4);
    CHECK(fs::exists(files.json));
    CHECK(fs::exists(files.csv));

    const std::string csv = slurp(files.csv);
    CHECK(csv.rfind(std::string(kVisitedCsvHeader) + "\n", 0) == 0);
    std::size_t total = 0;
    for (const auto& r : report.runs) total += r.result.evaluations;
    CHECK(count(csv, "\n") == total + 1);

    const auto doc = nlohmann::json::parse(slurp(files.json));
    CHECK(doc["scenario"] == "corner");
    CHECK(doc["status"] == std::string(kStatusFound));
    const auto& first = doc["counterexamples"][0];
    for (const char* key : {"scenario", "seed", "state", "omega_applied", "successor", "objective", "evaluations"}) {
        CHECK(first.contains(key));
    }
    for (const char* key : {"x", "y", "theta", "omega", "x_T", "y_T"}) CHECK(first["state"].contains(key));
    CHECK(first["objective"] == 0.0);

    SUBCASE("reloaded counterexamples re-validate") {
        const auto parsed = parse_counterexamples_json(slurp(files.json));
        CHECK(parsed.scenario_name == "corner");
        REQUIRE(parsed.counterexamples.size() == report.counterexamples().size());
        for (const auto& c : parsed.counterexamples) CHECK(validate(c, sc));
        CHECK(parsed.counterexamples == report.counterexamples());
    }
    SUBCASE("svg structure") {
        for (const auto& r : report.runs) {
            const std::string svg = render_run_svg(r, sc);
            CHECK(count(svg, "class=\"obstacle\"") == sc.map.obstacles.size());
            CHECK(count(svg, "class=\"visited\"") == r.result.evaluations);
            CHECK(count(svg, "class=\"counterexample-successor\"") == (r.counterexample ? 1u : 0u));
            CHECK(count(svg, "class=\"initial\"") == (r.counterexample ? 1u : 0u));
            CHECK(count(svg, "class=\"target\"") == (r.counterexample ? 1u : 0u));
            CHECK(count(svg, "class=\"scale-bar\"") == 1);
            CHECK(svg.find("</svg>") != std::string::npos);
        }
    }
    SUBCASE("plots disabled") {
        const auto d2 = scratch_dir("noplots");
        CHECK(emit_report(report, sc, d2, false).svgs.empty());
    }
}

TEST_CASE("emit_report with no counterexamples") {
    const Scenario sc = empty_scenario();
    SwarmParams params;
    params.max_iterations = 5;
    const auto report = run_campaign(sc, params, 2);
    const auto text = counterexamples_json(report);
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["counterexamples"].empty());
    CHECK(doc["status"] == std::string(kStatusNone));
}

TEST_CASE("emit_report surfaces the failing path") {
    const Scenario sc = empty_scenario();
    SwarmParams params;
    params.max_iterations = 1;
    const auto report = run_campaign(sc, params, 1);
    const auto dir = scratch_dir("blocked");
    std::ofstream(dir / "file") << "x";
    try {
        emit_report(report, sc, dir / "file" / "sub", false);
        FAIL("expected ReportError");
    } catch (const ReportError& e) {
        CHECK(std::string(e.what()).find("file") != std::string::npos);
    }
}

TEST_CASE("format_double round-trips") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(gen);
        CHECK(std::stod(format_double(v)) == v);
    }
}

#ifdef FALSIFY_BIN
namespace {

int run_cli(const std::string& args) {
    const int status = std::system((std::string(FALSIFY_BIN) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli exit codes and outputs") {
    const auto dir = scratch_dir("cli");
    const std::string out = (dir / "found").string();

    CHECK(run_cli("scenarios") == 0);
    CHECK(run_cli("run --scenario corner --runs 2 --seed 3 --plots --out " + out) == 0);
    CHECK(fs::exists(fs::path(out) / "run_1.svg"));
    CHECK(run_cli("validate --report " + out + "/counterexamples.json --scenario corner") == 0);

    CHECK(run_cli("run --scenario empty --runs 1 --max-iters 3 --out " + (dir / "none").string()) == 1);
    CHECK(run_cli("validate --report " + (dir / "none").string() + "/counterexamples.json --scenario empty") == 1);

    CHECK(run_cli("run --scenario no-such-scenario --out " + out) == 2);
    std::ofstream(dir / "bad.json") << R"({"obstacles": [{"x_min": 3, "y_min": 1, "x_max": 1, "y_max": 2}]})";
    CHECK(run_cli("run --scenario " + (dir / "bad.json").string() + " --out " + out) == 2);
    CHECK(run_cli("run --swarm-size 1 --out " + out) == 2);
    CHECK(run_cli("bogus") == 2);

    // Environment seed is used unless --seed is given.
    const std::string a = (dir / "env_a").string();
    const std::string b = (dir / "env_b").string();
    const std::string c = (dir / "env_c").string();
    CHECK(run_cli("run --runs 1 --max-iters 5 --seed 77 --out " + a) <= 1);
    CHECK(run_cli("run --runs 1 --max-iters 5 --out " + b + " --seed 77") <= 1);
    CHECK(std::system(("FALSIFY_SEED=77 " + std::string(FALSIFY_BIN) + " run --runs 1 --max-iters 5 --out " + c +
                       " > /dev/null 2>&1").c_str()) != -1);
    CHECK(slurp(fs::path(a) / "visited.csv") == slurp(fs::path(c) / "visited.csv"));
    CHECK(run_cli("run --runs 1 --max-iters 5 --seed 78 --out " + b) <= 1);
    CHECK(slurp(fs::path(a) / "visited.csv") != slurp(fs::path(b) / "visited.csv"));
}
#endif
