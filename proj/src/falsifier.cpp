#include "falsify/falsifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace falsify {

namespace {

constexpr double kSuccessorTolerance = 1e-9;

void require_within_arena(double lo, double hi, double arena_lo, double arena_hi,
                          const char* what) {
    if (lo < arena_lo || hi > arena_hi) {
        throw std::invalid_argument(std::string("bounds for ") + what + " must lie within the arena");
    }
}

}  // namespace

SearchState SearchState::from_vector(std::span<const double> v) {
    if (v.size() != kDimension) throw std::invalid_argument("search state needs 6 components");
    return {v[0], v[1], wrap_angle(v[2]), v[3], v[4], v[5]};
}

std::array<double, SearchState::kDimension> SearchState::to_array() const {
    return {x, y, theta, omega, x_target, y_target};
}

SearchSpace Scenario::default_bounds(const ObstacleMap& map, const RoverParams& rover) {
    const Rect& a = map.arena;
    return {{a.x_min, a.y_min, -std::numbers::pi, -rover.omega_max, a.x_min, a.y_min},
            {a.x_max, a.y_max, std::numbers::pi, rover.omega_max, a.x_max, a.y_max}};
}

void Scenario::validate() const {
    map.validate();
    rover.validate();
    controller.validate(rover);
    if (bounds.dimension() != SearchState::kDimension || bounds.upper.size() != SearchState::kDimension) {
        throw std::invalid_argument("bounds dimension must be 6");
    }
    bounds.validate();
    const Rect& a = map.arena;
    require_within_arena(bounds.lower[0], bounds.upper[0], a.x_min, a.x_max, "x");
    require_within_arena(bounds.lower[1], bounds.upper[1], a.y_min, a.y_max, "y");
    require_within_arena(bounds.lower[4], bounds.upper[4], a.x_min, a.x_max, "x_target");
    require_within_arena(bounds.lower[5], bounds.upper[5], a.y_min, a.y_max, "y_target");
    if (bounds.lower[3] < -rover.omega_max || bounds.upper[3] > rover.omega_max) {
        throw std::invalid_argument("bounds for omega must lie within [-omega_max, omega_max]");
    }
}

Scenario corner_scenario() {
    Scenario s;
    s.name = "corner";
    s.map.arena = {0.0, 0.0, 4.0, 4.0};
    s.map.obstacles = {{1.5, 1.5, 2.5, 2.0}, {2.5, 1.5, 2.7, 3.0}};
    s.bounds = Scenario::default_bounds(s.map, s.rover);
    return s;
}

Scenario empty_scenario() {
    Scenario s;
    s.name = "empty";
    s.map.arena = {0.0, 0.0, 4.0, 4.0};
    s.bounds = Scenario::default_bounds(s.map, s.rover);
    // Positions stay 0.5 m off the walls, so no one-step violation exists.
    s.bounds.lower[0] = s.bounds.lower[1] = 0.5;
    s.bounds.upper[0] = s.bounds.upper[1] = 3.5;
    return s;
}

std::vector<std::string> builtin_scenario_names() { return {"corner", "empty"}; }

std::optional<Scenario> builtin_scenario(const std::string& name) {
    if (name == "corner") return corner_scenario();
    if (name == "empty") return empty_scenario();
    return std::nullopt;
}

double initial_collision_penalty(Point p, const Scenario& scenario) {
    const double clearance =
        std::min(arena_clearance(p, scenario.map.arena), nearest_obstacle_distance(p, scenario.map));
    return scenario.map.arena.diagonal() + std::max(0.0, scenario.rover.radius - clearance);
}

double objective(const SearchState& s, const Scenario& scenario) {
    const RoverParams& rover = scenario.rover;
    const Pose start = s.pose();
    if (is_collision(start.position(), rover.radius, scenario.map)) {
        return initial_collision_penalty(start.position(), scenario);
    }

    const SensorScan scan = sense(start, rover, scenario.map);
    const ControlOutput cmd =
        control(start, scan, s.target(), scenario.controller, rover, ControllerMemory{}, s.omega);
    const Pose next = step_unicycle(start, rover.v_const, cmd.omega, rover.dt);

    if (is_collision(next.position(), rover.radius, scenario.map)) return 0.0;
    return min_distance_to_obstacles(next.position(), scenario.map, rover.radius);
}

Counterexample make_counterexample(const SearchState& s, const Scenario& scenario,
                                   std::uint64_t seed, std::size_t evaluations) {
    const RoverParams& rover = scenario.rover;
    Counterexample c;
    c.state = s;
    c.seed = seed;
    c.evaluations_to_find = evaluations;
    const SensorScan scan = sense(s.pose(), rover, scenario.map);
    c.omega_applied =
        control(s.pose(), scan, s.target(), scenario.controller, rover, ControllerMemory{}, s.omega)
            .omega;
    c.successor = step_unicycle(s.pose(), rover.v_const, c.omega_applied, rover.dt);
    c.objective_value = objective(s, scenario);
    return c;
}

bool validate(const Counterexample& c, const Scenario& scenario) {
    const RoverParams& rover = scenario.rover;
    const Pose start{c.state.x, c.state.y, c.state.theta};
    if (is_collision(start.position(), rover.radius, scenario.map)) return false;

    ControllerMemory fresh;
    const SensorScan scan = sense(start, rover, scenario.map);
    const double omega = control(start, scan, {c.state.x_target, c.state.y_target},
                                 scenario.controller, rover, fresh, c.state.omega)
                             .omega;
    const Pose next = step_unicycle(start, rover.v_const, omega, rover.dt);
    if (!is_collision(next.position(), rover.radius, scenario.map)) return false;

    return std::abs(next.x - c.successor.x) <= kSuccessorTolerance &&
           std::abs(next.y - c.successor.y) <= kSuccessorTolerance &&
           std::abs(wrap_angle(next.theta - c.successor.theta)) <= kSuccessorTolerance;
}

std::vector<Counterexample> CampaignReport::counterexamples() const {
    std::vector<Counterexample> out;
    for (const auto& r : runs) {
        if (r.counterexample) out.push_back(*r.counterexample);
    }
    return out;
}

CampaignReport run_campaign(const Scenario& scenario, const SwarmParams& params,
                            std::size_t num_runs, std::size_t max_threads) {
    if (num_runs < 1) throw std::invalid_argument("num_runs must be >= 1");
    scenario.validate();
    params.validate();

    CampaignReport report;
    report.scenario_name = scenario.name;
    report.runs.resize(num_runs);

    auto execute = [&](std::size_t run) {
        SwarmParams run_params = params;
        run_params.seed = params.seed + run;
        run_params.target_value = 0.0;

        const auto start = std::chrono::steady_clock::now();
        SwarmResult result = pso_minimize(
            [&scenario](std::span<const double> v) {
                return objective(SearchState::from_vector(v), scenario);
            },
            scenario.bounds, run_params);
        const auto stop = std::chrono::steady_clock::now();

        RunSummary& summary = report.runs[run];
        summary.run = run;
        summary.seed = run_params.seed;
        summary.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
        if (result.best_value == 0.0) {
            Counterexample c = make_counterexample(SearchState::from_vector(result.best_position),
                                                   scenario, run_params.seed, result.evaluations);
            if (c.objective_value != 0.0 || !validate(c, scenario)) {
                throw std::logic_error("run " + std::to_string(run) +
                                       " produced a counterexample that fails validation");
            }
            summary.counterexample = c;
        }
        summary.result = std::move(result);
    };

    std::size_t threads = max_threads != 0 ? max_threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, num_runs);
    if (threads == 1) {
        for (std::size_t run = 0; run < num_runs; ++run) execute(run);
        return report;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(num_runs);
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t run = next++; run < num_runs; run = next++) {
                    try {
                        execute(run);
                    } catch (...) {
                        errors[run] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return report;
}

}  // namespace falsify
