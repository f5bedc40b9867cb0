#include "falsify/config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace falsify {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) throw ConfigError(path + key + ": unknown field");
    }
}

const json* section(const json& parent, const char* key, const std::string& path) {
    auto it = parent.find(key);
    if (it == parent.end()) return nullptr;
    if (!it->is_object()) throw ConfigError(path + key + ": expected an object");
    return &*it;
}

void read_number(const json& obj, const char* key, const std::string& path, double& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) throw ConfigError(path + key + ": expected a number");
    out = it->get<double>();
}

template <typename Int>
void read_unsigned(const json& obj, const char* key, const std::string& path, Int& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_unsigned()) {
        throw ConfigError(path + key + ": expected a non-negative integer");
    }
    out = it->get<Int>();
}

std::vector<double> number_array(const json& value, const std::string& path) {
    if (!value.is_array()) throw ConfigError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number()) {
            throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
        }
        out.push_back(value[i].get<double>());
    }
    return out;
}

Rect read_rect(const json& value, const std::string& path) {
    if (!value.is_object()) throw ConfigError(path + ": expected an object");
    reject_unknown(value, path + ".", {"x_min", "y_min", "x_max", "y_max"});
    Rect r;
    for (const char* key : {"x_min", "y_min", "x_max", "y_max"}) {
        if (!value.contains(key)) throw ConfigError(path + "." + key + ": missing field");
    }
    read_number(value, "x_min", path + ".", r.x_min);
    read_number(value, "y_min", path + ".", r.y_min);
    read_number(value, "x_max", path + ".", r.x_max);
    read_number(value, "y_max", path + ".", r.y_max);
    return r;
}

json rect_json(const Rect& r) {
    return {{"x_min", r.x_min}, {"y_min", r.y_min}, {"x_max", r.x_max}, {"y_max", r.y_max}};
}

LoadedConfig from_json(const json& root, const std::string& default_name) {
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, "",
                   {"name", "arena", "obstacles", "rover", "controller", "bounds", "pso"});

    LoadedConfig cfg;
    Scenario& s = cfg.scenario;
    s.name = default_name;
    s.map.arena = {0.0, 0.0, 4.0, 4.0};

    if (auto it = root.find("name"); it != root.end()) {
        if (!it->is_string()) throw ConfigError("name: expected a string");
        s.name = it->get<std::string>();
    }
    if (root.contains("arena")) s.map.arena = read_rect(root.at("arena"), "arena");
    if (auto it = root.find("obstacles"); it != root.end()) {
        if (!it->is_array()) throw ConfigError("obstacles: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            s.map.obstacles.push_back(read_rect((*it)[i], "obstacles[" + std::to_string(i) + "]"));
        }
    }
    if (const json* rover = section(root, "rover", "")) {
        reject_unknown(*rover, "rover.",
                       {"radius", "v_const", "omega_max", "dt", "sensor_angles", "sensor_min_range",
                        "sensor_max_range"});
        read_number(*rover, "radius", "rover.", s.rover.radius);
        read_number(*rover, "v_const", "rover.", s.rover.v_const);
        read_number(*rover, "omega_max", "rover.", s.rover.omega_max);
        read_number(*rover, "dt", "rover.", s.rover.dt);
        read_number(*rover, "sensor_min_range", "rover.", s.rover.sensor_min_range);
        read_number(*rover, "sensor_max_range", "rover.", s.rover.sensor_max_range);
        if (rover->contains("sensor_angles")) {
            s.rover.sensor_angles = number_array(rover->at("sensor_angles"), "rover.sensor_angles");
        }
    }
    if (const json* ctl = section(root, "controller", "")) {
        reject_unknown(*ctl, "controller.", {"kp", "ki", "kd", "blend_threshold", "blend_alpha"});
        read_number(*ctl, "kp", "controller.", s.controller.kp);
        read_number(*ctl, "ki", "controller.", s.controller.ki);
        read_number(*ctl, "kd", "controller.", s.controller.kd);
        read_number(*ctl, "blend_threshold", "controller.", s.controller.blend_threshold);
        read_number(*ctl, "blend_alpha", "controller.", s.controller.blend_alpha);
    }
    s.bounds = Scenario::default_bounds(s.map, s.rover);
    if (const json* b = section(root, "bounds", "")) {
        reject_unknown(*b, "bounds.", {"lower", "upper"});
        if (b->contains("lower")) s.bounds.lower = number_array(b->at("lower"), "bounds.lower");
        if (b->contains("upper")) s.bounds.upper = number_array(b->at("upper"), "bounds.upper");
    }
    if (const json* pso = section(root, "pso", "")) {
        reject_unknown(*pso, "pso.",
                       {"swarm_size", "max_iterations", "inertia_weight", "cognitive_coefficient",
                        "social_coefficient", "max_velocity_fraction", "seed"});
        read_unsigned(*pso, "swarm_size", "pso.", cfg.swarm.swarm_size);
        read_unsigned(*pso, "max_iterations", "pso.", cfg.swarm.max_iterations);
        read_number(*pso, "inertia_weight", "pso.", cfg.swarm.inertia_weight);
        read_number(*pso, "cognitive_coefficient", "pso.", cfg.swarm.cognitive_coefficient);
        read_number(*pso, "social_coefficient", "pso.", cfg.swarm.social_coefficient);
        read_number(*pso, "max_velocity_fraction", "pso.", cfg.swarm.max_velocity_fraction);
        read_unsigned(*pso, "seed", "pso.", cfg.swarm.seed);
    }

    try {
        s.validate();
        cfg.swarm.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

}  // namespace

LoadedConfig parse_config(std::string_view text, const std::string& source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        std::ostringstream msg;
        msg << source << ":" << line << ":" << column << ": parse error: " << e.what();
        throw ConfigError(msg.str());
    }
    try {
        return from_json(root, std::filesystem::path(source).stem().string());
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
}

LoadedConfig load_config(const std::string& name_or_path) {
    if (auto builtin = builtin_scenario(name_or_path)) return {*builtin, SwarmParams{}};

    std::ifstream in(name_or_path, std::ios::binary);
    if (!in) {
        throw ConfigError("'" + name_or_path +
                          "' is neither a built-in scenario nor a readable config file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), name_or_path);
}

std::string serialize_config(const Scenario& scenario, const SwarmParams& swarm) {
    json obstacles = json::array();
    for (const auto& r : scenario.map.obstacles) obstacles.push_back(rect_json(r));
    const RoverParams& rv = scenario.rover;
    const ControllerParams& c = scenario.controller;
    json root = {
        {"name", scenario.name},
        {"arena", rect_json(scenario.map.arena)},
        {"obstacles", obstacles},
        {"rover",
         {{"radius", rv.radius},
          {"v_const", rv.v_const},
          {"omega_max", rv.omega_max},
          {"dt", rv.dt},
          {"sensor_angles", rv.sensor_angles},
          {"sensor_min_range", rv.sensor_min_range},
          {"sensor_max_range", rv.sensor_max_range}}},
        {"controller",
         {{"kp", c.kp},
          {"ki", c.ki},
          {"kd", c.kd},
          {"blend_threshold", c.blend_threshold},
          {"blend_alpha", c.blend_alpha}}},
        {"bounds", {{"lower", scenario.bounds.lower}, {"upper", scenario.bounds.upper}}},
        {"pso",
         {{"swarm_size", swarm.swarm_size},
          {"max_iterations", swarm.max_iterations},
          {"inertia_weight", swarm.inertia_weight},
          {"cognitive_coefficient", swarm.cognitive_coefficient},
          {"social_coefficient", swarm.social_coefficient},
          {"max_velocity_fraction", swarm.max_velocity_fraction},
          {"seed", swarm.seed}}},
    };
    return root.dump(2) + "\n";
}

}  // namespace falsify
