// falsify: search for one-step collision counterexamples of the rover
// controller with particle swarm optimization.
//
// Exit codes: 0 counterexample found and validated, 1 none found,
//             2 configuration or usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "falsify/config.hpp"
#include "falsify/falsifier.hpp"
#include "falsify/report.hpp"

namespace {

constexpr int kFound = 0;
constexpr int kNoneFound = 1;
constexpr int kConfigError = 2;

struct RunOptions {
    std::string scenario = "corner";
    std::size_t runs = 4;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_iters;
    std::optional<std::size_t> swarm_size;
    std::string out = "falsify_out";
    bool plots = false;
    std::size_t threads = 0;
};

std::optional<std::uint64_t> seed_from_env() {
    const char* env = std::getenv("FALSIFY_SEED");
    if (env == nullptr || *env == '\0') return std::nullopt;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (*end != '\0') throw falsify::ConfigError("FALSIFY_SEED must be a non-negative integer");
    return value;
}

int cmd_run(const RunOptions& opt) {
    falsify::LoadedConfig cfg = falsify::load_config(opt.scenario);
    if (auto env = seed_from_env()) cfg.swarm.seed = *env;
    if (opt.seed) cfg.swarm.seed = *opt.seed;
    if (opt.max_iters) cfg.swarm.max_iterations = *opt.max_iters;
    if (opt.swarm_size) cfg.swarm.swarm_size = *opt.swarm_size;
    try {
        cfg.swarm.validate();
    } catch (const std::invalid_argument& e) {
        throw falsify::ConfigError(e.what());
    }
    if (opt.runs < 1) throw falsify::ConfigError("--runs must be >= 1");

    const falsify::CampaignReport report =
        falsify::run_campaign(cfg.scenario, cfg.swarm, opt.runs, opt.threads);
    const auto files = falsify::emit_report(report, cfg.scenario, opt.out, opt.plots);

    for (const auto& r : report.runs) {
        std::cout << "run " << r.run << " seed " << r.seed << ": ";
        if (r.counterexample) {
            const auto& s = r.counterexample->state;
            std::cout << "counterexample after " << r.result.evaluations << " evaluations"
                      << " (x=" << s.x << ", y=" << s.y << ", theta=" << s.theta
                      << ", omega=" << s.omega << ", x_T=" << s.x_target << ", y_T=" << s.y_target
                      << ")";
        } else {
            std::cout << "none found, best J=" << r.result.best_value << " after "
                      << r.result.evaluations << " evaluations";
        }
        std::cout << " [" << r.wall_time_seconds << " s]\n";
    }
    std::cout << "results: " << files.json.string() << "\nvisited: " << files.csv.string() << "\n";
    for (const auto& svg : files.svgs) std::cout << "plot: " << svg.string() << "\n";

    const bool found = !report.counterexamples().empty();
    std::cout << (found ? falsify::kStatusFound : falsify::kStatusNone) << "\n";
    return found ? kFound : kNoneFound;
}

int cmd_validate(const std::string& report_path, const std::string& scenario_name) {
    const falsify::LoadedConfig cfg = falsify::load_config(scenario_name);
    std::ifstream in(report_path, std::ios::binary);
    if (!in) throw falsify::ConfigError("cannot read report " + report_path);
    std::ostringstream text;
    text << in.rdbuf();
    const auto parsed = falsify::parse_counterexamples_json(text.str());
    if (parsed.scenario_name != cfg.scenario.name) {
        std::cerr << "warning: report was produced for scenario '" << parsed.scenario_name
                  << "', validating against '" << cfg.scenario.name << "'\n";
    }

    std::size_t valid = 0;
    for (std::size_t i = 0; i < parsed.counterexamples.size(); ++i) {
        const bool ok = falsify::validate(parsed.counterexamples[i], cfg.scenario);
        std::cout << "counterexample " << i << " (seed " << parsed.counterexamples[i].seed
                  << "): " << (ok ? "valid" : "INVALID") << "\n";
        valid += ok ? 1 : 0;
    }
    if (parsed.counterexamples.empty()) std::cout << falsify::kStatusNone << "\n";
    return !parsed.counterexamples.empty() && valid == parsed.counterexamples.size() ? kFound
                                                                                     : kNoneFound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PSO-based falsification of a rover collision-avoidance controller"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run a falsification campaign");
    run_cmd->add_option("--scenario", run.scenario, "Built-in scenario name or JSON config path")
        ->capture_default_str();
    run_cmd->add_option("--runs", run.runs, "Number of independent runs")->capture_default_str();
    run_cmd->add_option("--seed", run.seed, "Seed of the first run (overrides FALSIFY_SEED)");
    run_cmd->add_option("--max-iters", run.max_iters, "PSO iteration cap per run");
    run_cmd->add_option("--swarm-size", run.swarm_size, "Particles per swarm");
    run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
    run_cmd->add_flag("--plots", run.plots, "Write one SVG plot per run");
    run_cmd->add_option("--threads", run.threads, "Worker threads for runs (0 = hardware)");

    std::string report_path;
    std::string validate_scenario = "corner";
    auto* validate_cmd = app.add_subcommand("validate", "Re-validate counterexamples in a results file");
    validate_cmd->add_option("--report", report_path, "counterexamples.json to check")->required();
    validate_cmd->add_option("--scenario", validate_scenario, "Built-in scenario name or config path")
        ->capture_default_str();

    auto* list_cmd = app.add_subcommand("scenarios", "List built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*validate_cmd) return cmd_validate(report_path, validate_scenario);
        if (*list_cmd) {
            for (const auto& name : falsify::builtin_scenario_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const falsify::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const falsify::ReportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return kConfigError;
}
