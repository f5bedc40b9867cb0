#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "falsify/falsifier.hpp"
#include "falsify/optimizer.hpp"

namespace falsify {

/// Malformed or invalid configuration. The message names the line/column for
/// syntax errors and the offending field or invariant otherwise.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LoadedConfig {
    Scenario scenario;
    SwarmParams swarm;
};

/// Resolves a built-in scenario name, or else reads a JSON config file.
///
/// Config schema (every section and field optional, defaults filled in):
///
///     {
///       "name": "my-scenario",
///       "arena": {"x_min": 0, "y_min": 0, "x_max": 4, "y_max": 4},
///       "obstacles": [{"x_min": 1.5, "y_min": 1.5, "x_max": 2.5, "y_max": 2.0}],
///       "rover": {"radius": 0.09, "v_const": 0.1, "omega_max": 2.5, "dt": 0.05,
///                 "sensor_angles": [...], "sensor_min_range": 0.04,
///                 "sensor_max_range": 0.30},
///       "controller": {"kp": 4.0, "ki": 0.01, "kd": 0.05,
///                      "blend_threshold": 0.25, "blend_alpha": 0.6},
///       "bounds": {"lower": [6 numbers], "upper": [6 numbers]},
///       "pso": {"swarm_size": 60, "max_iterations": 300, "inertia_weight": 0.7298,
///               "cognitive_coefficient": 1.49618, "social_coefficient": 1.49618,
///               "max_velocity_fraction": 0.2, "seed": 1}
///     }
///
/// Omitted "obstacles" on a config file means an empty map; omitted "bounds"
/// are derived from the arena and omega_max.
LoadedConfig load_config(const std::string& name_or_path);

/// Parses config text; source is used in diagnostics.
LoadedConfig parse_config(std::string_view text, const std::string& source = "<config>");

/// Serializes to the config format; parse_config of the result compares equal.
std::string serialize_config(const Scenario& scenario, const SwarmParams& swarm);

}  // namespace falsify
