#include "falsify/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace falsify {

namespace {
constexpr double kOmegaEpsilon = 1e-9;
}

void RoverParams::validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("rover radius must be > 0");
    if (!(v_const > 0.0)) throw std::invalid_argument("rover v_const must be > 0");
    if (!(omega_max > 0.0)) throw std::invalid_argument("rover omega_max must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("rover dt must be > 0");
    if (!(sensor_min_range >= 0.0 && sensor_min_range < sensor_max_range)) {
        throw std::invalid_argument("rover requires 0 <= sensor_min_range < sensor_max_range");
    }
    for (double a : sensor_angles) {
        if (!std::isfinite(a)) throw std::invalid_argument("rover sensor_angles must be finite");
    }
}

double wrap_angle(double angle) {
    double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
    if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
    return wrapped;
}

Pose step_unicycle(const Pose& pose, double v, double omega, double dt) {
    Pose next;
    const double heading = pose.theta + omega * dt;
    if (std::abs(omega) > kOmegaEpsilon) {
        // (v/w)(sin(th + w dt) - sin th) and -(v/w)(cos(th + w dt) - cos th) in
        // half-angle form, which avoids cancellation for small w.
        const double half = 0.5 * omega * dt;
        const double chord = 2.0 * v / omega * std::sin(half);
        const double mid = pose.theta + half;
        next.x = pose.x + chord * std::cos(mid);
        next.y = pose.y + chord * std::sin(mid);
    } else {
        next.x = pose.x + v * dt * std::cos(pose.theta);
        next.y = pose.y + v * dt * std::sin(pose.theta);
    }
    next.theta = wrap_angle(heading);
    return next;
}

SensorScan sense(const Pose& pose, const RoverParams& params, const ObstacleMap& map) {
    SensorScan scan;
    scan.readings.reserve(params.sensor_angles.size());
    const Point origin = pose.position();
    for (double alpha : params.sensor_angles) {
        const double heading = pose.theta + alpha;
        const Point dir{std::cos(heading), std::sin(heading)};
        double hit = ray_exit_distance(origin, dir, map.arena);
        for (const auto& r : map.obstacles) {
            if (auto t = ray_rect_intersection(origin, dir, r)) hit = std::min(hit, *t);
        }
        scan.readings.push_back(std::clamp(hit, params.sensor_min_range, params.sensor_max_range));
    }
    return scan;
}

}  // namespace falsify
