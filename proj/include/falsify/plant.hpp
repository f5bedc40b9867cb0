#pragma once

#include <numbers>
#include <vector>

#include "falsify/geometry.hpp"

namespace falsify {

/// Differential-drive rover driven at constant linear speed; only the turn
/// rate is commanded. Defaults are at the scale of a small educational rover.
struct RoverParams {
    double radius = 0.09;
    double v_const = 0.1;
    double omega_max = 2.5;
    double dt = 0.05;
    std::vector<double> sensor_angles = {-std::numbers::pi / 2, -std::numbers::pi / 4, 0.0,
                                         std::numbers::pi / 4, std::numbers::pi / 2};
    double sensor_min_range = 0.04;
    double sensor_max_range = 0.30;

    void validate() const;

    bool operator==(const RoverParams&) const = default;
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    [[nodiscard]] Point position() const { return {x, y}; }

    bool operator==(const Pose&) const = default;
};

struct SensorScan {
    std::vector<double> readings;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// Exact unicycle integration over one step with constant v and omega.
/// Falls back to the straight-line solution for |omega| <= 1e-9.
Pose step_unicycle(const Pose& pose, double v, double omega, double dt);

/// Range readings for each sensor ray against obstacles and arena walls,
/// clamped to [sensor_min_range, sensor_max_range]. Rays are cast from the
/// rover center.
SensorScan sense(const Pose& pose, const RoverParams& params, const ObstacleMap& map);

}  // namespace falsify
