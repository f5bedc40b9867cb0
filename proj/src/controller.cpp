#include "falsify/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace falsify {

namespace {
constexpr double kGoalReached = 1e-9;
constexpr double kTinyGain = 1e-12;
// Pushes shorter than this are rounding residue of opposing sensors.
constexpr double kCancelledPush = 1e-9;
}  // namespace

void ControllerParams::validate(const RoverParams& rover) const {
    if (!(kp > 0.0)) throw std::invalid_argument("controller kp must be > 0");
    if (!(ki >= 0.0)) throw std::invalid_argument("controller ki must be >= 0");
    if (!(kd >= 0.0)) throw std::invalid_argument("controller kd must be >= 0");
    if (!(blend_threshold > rover.sensor_min_range && blend_threshold <= rover.sensor_max_range)) {
        throw std::invalid_argument(
            "controller requires sensor_min_range < blend_threshold <= sensor_max_range");
    }
    if (!(blend_alpha >= 0.0 && blend_alpha <= 1.0)) {
        throw std::invalid_argument("controller blend_alpha must be in [0, 1]");
    }
}

ControlOutput control(const Pose& pose, const SensorScan& scan, Point target,
                      const ControllerParams& params, const RoverParams& rover,
                      const ControllerMemory& memory, double omega_prev) {
    if (scan.readings.size() != rover.sensor_angles.size()) {
        throw std::invalid_argument("sensor scan length does not match sensor count");
    }

    ControlOutput out{0.0, memory};
    const double gx = target.x - pose.x;
    const double gy = target.y - pose.y;
    const double goal_distance = std::hypot(gx, gy);
    if (goal_distance < kGoalReached) return out;

    double ux = gx / goal_distance;
    double uy = gy / goal_distance;

    double ax = 0.0;
    double ay = 0.0;
    bool active = false;
    for (std::size_t i = 0; i < scan.readings.size(); ++i) {
        const double reading = scan.readings[i];
        if (reading >= params.blend_threshold) continue;
        active = true;
        const double w = (params.blend_threshold - reading) / params.blend_threshold;
        const double heading = pose.theta + rover.sensor_angles[i];
        ax -= w * std::cos(heading);
        ay -= w * std::sin(heading);
    }
    if (active) {
        // Opposing sensors may cancel; then only the goal term remains.
        const double an = std::hypot(ax, ay);
        if (an > kCancelledPush) {
            ax /= an;
            ay /= an;
        } else {
            ax = 0.0;
            ay = 0.0;
        }
        const double bx = params.blend_alpha * ax + (1.0 - params.blend_alpha) * ux;
        const double by = params.blend_alpha * ay + (1.0 - params.blend_alpha) * uy;
        const double bn = std::hypot(bx, by);
        if (bn > 0.0) {
            ux = bx / bn;
            uy = by / bn;
        }
    }

    const double error = wrap_angle(std::atan2(uy, ux) - pose.theta);
    const double previous =
        memory.initialized ? memory.previous_error : omega_prev * rover.dt / params.kp;

    const double integral_limit = rover.omega_max / std::max(params.ki, kTinyGain);
    const double integral =
        std::clamp(memory.integral_error + error * rover.dt, -integral_limit, integral_limit);
    const double derivative = (error - previous) / rover.dt;

    const double raw = params.kp * error + params.ki * integral + params.kd * derivative;
    out.omega = std::clamp(raw, -rover.omega_max, rover.omega_max);
    out.memory = {integral, error, true};
    return out;
}

}  // namespace falsify
