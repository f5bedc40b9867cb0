#pragma once

#include "falsify/geometry.hpp"
#include "falsify/plant.hpp"

namespace falsify {

/// Gains for the blended go-to-goal / avoid-obstacles heading controller.
struct ControllerParams {
    double kp = 4.0;
    double ki = 0.01;
    double kd = 0.05;
    /// Sensor readings below this distance contribute to the avoidance direction.
    double blend_threshold = 0.25;
    /// Weight of the avoidance direction when any sensor is active.
    double blend_alpha = 0.6;

    void validate(const RoverParams& rover) const;

    bool operator==(const ControllerParams&) const = default;
};

struct ControllerMemory {
    double integral_error = 0.0;
    double previous_error = 0.0;
    bool initialized = false;
};

struct ControlOutput {
    double omega = 0.0;
    ControllerMemory memory;
};

/// One controller tick. Linear speed is fixed by the rover; only the turn
/// rate is produced.
///
/// The goal direction points at the target. Sensors reading below
/// blend_threshold push the rover away along their rays with weight
/// (threshold - reading) / threshold, and the normalized push is blended with
/// the goal direction by blend_alpha. A PID on the heading error to the blended
/// direction yields omega, clamped to +-omega_max; the integral is clamped to
/// +-omega_max / ki.
///
/// When memory is not yet initialized the previous error is seeded as
/// omega_prev * dt / kp, treating omega_prev as the turn rate the rover held
/// just before the tick.
ControlOutput control(const Pose& pose, const SensorScan& scan, Point target,
                      const ControllerParams& params, const RoverParams& rover,
                      const ControllerMemory& memory, double omega_prev);

}  // namespace falsify
