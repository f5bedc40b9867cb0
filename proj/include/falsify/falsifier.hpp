#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "falsify/controller.hpp"
#include "falsify/geometry.hpp"
#include "falsify/optimizer.hpp"
#include "falsify/plant.hpp"

namespace falsify {

/// Search point (x, y, theta, omega, x_target, y_target).
struct SearchState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double omega = 0.0;
    double x_target = 0.0;
    double y_target = 0.0;

    static constexpr std::size_t kDimension = 6;

    /// theta is wrapped into (-pi, pi].
    static SearchState from_vector(std::span<const double> v);
    [[nodiscard]] std::array<double, kDimension> to_array() const;

    [[nodiscard]] Pose pose() const { return {x, y, theta}; }
    [[nodiscard]] Point target() const { return {x_target, y_target}; }

    bool operator==(const SearchState&) const = default;
};

struct Scenario {
    std::string name;
    ObstacleMap map;
    RoverParams rover;
    ControllerParams controller;
    SearchSpace bounds;

    /// Bounds spanning the arena for positions and targets, [-pi, pi] for the
    /// heading and [-omega_max, omega_max] for the turn rate.
    static SearchSpace default_bounds(const ObstacleMap& map, const RoverParams& rover);

    void validate() const;

    bool operator==(const Scenario&) const = default;
};

/// 4 x 4 m arena with two rectangles forming an inside corner.
Scenario corner_scenario();
/// Open 4 x 4 m arena, no obstacles, rover positions kept 0.5 m from the walls.
Scenario empty_scenario();

std::vector<std::string> builtin_scenario_names();
std::optional<Scenario> builtin_scenario(const std::string& name);

/// Penalty returned for states whose initial position already collides:
/// arena diagonal plus how far the disc overlaps the nearest obstacle or wall.
double initial_collision_penalty(Point p, const Scenario& scenario);

/// One-step falsification objective. 0 exactly when the state is collision
/// free and its one-step successor collides; otherwise the successor's
/// clearance to the nearest obstacle, or the initial-collision penalty.
double objective(const SearchState& s, const Scenario& scenario);

struct Counterexample {
    SearchState state;
    Pose successor;
    double omega_applied = 0.0;
    double objective_value = 0.0;
    std::uint64_t seed = 0;
    std::size_t evaluations_to_find = 0;

    bool operator==(const Counterexample&) const = default;
};

/// Re-simulates one controller step from c.state. True iff the initial state
/// is collision free, the successor collides, and the successor matches
/// c.successor within 1e-9.
bool validate(const Counterexample& c, const Scenario& scenario);

/// Builds a counterexample record by simulating one step from a state.
Counterexample make_counterexample(const SearchState& s, const Scenario& scenario,
                                   std::uint64_t seed, std::size_t evaluations);

struct RunSummary {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    SwarmResult result;
    double wall_time_seconds = 0.0;
    std::optional<Counterexample> counterexample;
};

struct CampaignReport {
    std::string scenario_name;
    std::vector<RunSummary> runs;

    [[nodiscard]] std::vector<Counterexample> counterexamples() const;
};

/// Runs num_runs independent swarms with seeds params.seed, params.seed + 1,
/// ... and target value 0. Runs may execute on worker threads; results are
/// ordered by run index and do not depend on scheduling. Throws
/// std::logic_error if a run reaches 0 but its counterexample fails validation.
CampaignReport run_campaign(const Scenario& scenario, const SwarmParams& params,
                            std::size_t num_runs, std::size_t max_threads = 0);

}  // namespace falsify
