#pragma once

// Reference computations used only by tests. They deliberately avoid the
// library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "falsify/falsifier.hpp"

namespace oracle {

struct EulerPose {
    double x, y, theta;
};

/// Forward Euler over `substeps` equal steps. The heading's cos/sin are
/// advanced by an exact per-substep rotation, which is the same sequence of
/// headings as theta_k = theta_0 + k * omega * h.
inline EulerPose euler_unicycle(double x, double y, double theta, double v, double omega, double dt,
                                long substeps) {
    const double h = dt / static_cast<double>(substeps);
    const double cr = std::cos(omega * h);
    const double sr = std::sin(omega * h);
    double c = std::cos(theta);
    double s = std::sin(theta);
    for (long k = 0; k < substeps; ++k) {
        x += v * h * c;
        y += v * h * s;
        const double nc = c * cr - s * sr;
        s = s * cr + c * sr;
        c = nc;
    }
    return {x, y, theta + omega * dt};
}

/// Distance from p to a rectangle by sampling its boundary every `spacing`
/// meters; 0 for points inside.
inline double sampled_rect_distance(double px, double py, const falsify::Rect& r, double spacing) {
    if (px >= r.x_min && px <= r.x_max && py >= r.y_min && py <= r.y_max) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    auto edge = [&](double x0, double y0, double x1, double y1) {
        const double length = std::hypot(x1 - x0, y1 - y0);
        const long n = static_cast<long>(std::ceil(length / spacing));
        for (long i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n);
            const double qx = x0 + t * (x1 - x0);
            const double qy = y0 + t * (y1 - y0);
            best = std::min(best, std::sqrt((qx - px) * (qx - px) + (qy - py) * (qy - py)));
        }
    };
    edge(r.x_min, r.y_min, r.x_max, r.y_min);
    edge(r.x_max, r.y_min, r.x_max, r.y_max);
    edge(r.x_max, r.y_max, r.x_min, r.y_max);
    edge(r.x_min, r.y_max, r.x_min, r.y_min);
    return best;
}

inline double sampled_min_distance(double px, double py, const falsify::ObstacleMap& map,
                                   double radius, double spacing) {
    if (map.obstacles.empty()) {
        return std::hypot(map.arena.x_max - map.arena.x_min, map.arena.y_max - map.arena.y_min);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : map.obstacles) best = std::min(best, sampled_rect_distance(px, py, r, spacing));
    return std::max(0.0, best - radius);
}

/// Disc-vs-map collision written from the definition: the disc overlaps a
/// rectangle iff the clamped nearest point is within the radius; it violates
/// the arena iff the center is within the radius of (or beyond) any wall.
inline bool disc_collides(double px, double py, double radius, const falsify::ObstacleMap& map) {
    const auto& a = map.arena;
    if (px - a.x_min <= radius || a.x_max - px <= radius || py - a.y_min <= radius ||
        a.y_max - py <= radius) {
        return true;
    }
    for (const auto& r : map.obstacles) {
        const double qx = std::clamp(px, r.x_min, r.x_max);
        const double qy = std::clamp(py, r.y_min, r.y_max);
        if (std::hypot(px - qx, py - qy) <= radius) return true;
    }
    return false;
}

/// Re-simulates one controller step from s and reports whether s is a genuine
/// counterexample: collision-free start, colliding successor. The plant step
/// itself is checked separately against euler_unicycle.
inline bool one_step_violation(const falsify::SearchState& s, const falsify::Scenario& sc) {
    const double rho = sc.rover.radius;
    if (disc_collides(s.x, s.y, rho, sc.map)) return false;
    const falsify::Pose start{s.x, s.y, s.theta};
    const auto scan = falsify::sense(start, sc.rover, sc.map);
    const double omega = falsify::control(start, scan, {s.x_target, s.y_target}, sc.controller,
                                          sc.rover, falsify::ControllerMemory{}, s.omega)
                             .omega;
    const falsify::Pose next = falsify::step_unicycle(start, sc.rover.v_const, omega, sc.rover.dt);
    return disc_collides(next.x, next.y, rho, sc.map);
}

/// Uniform random state inside the scenario bounds.
inline falsify::SearchState random_state(const falsify::Scenario& sc, std::mt19937_64& rng) {
    std::vector<double> v(6);
    for (std::size_t d = 0; d < 6; ++d) {
        std::uniform_real_distribution<double> u(sc.bounds.lower[d], sc.bounds.upper[d]);
        v[d] = u(rng);
    }
    return falsify::SearchState::from_vector(v);
}

/// Random state whose disc sits within +-2 cm of touching a random obstacle
/// edge, so both branches of the objective are well represented.
inline falsify::SearchState near_contact_state(const falsify::Scenario& sc, std::mt19937_64& rng) {
    falsify::SearchState s = random_state(sc, rng);
    if (sc.map.obstacles.empty()) return s;
    std::uniform_int_distribution<std::size_t> pick(0, sc.map.obstacles.size() - 1);
    const auto& r = sc.map.obstacles[pick(rng)];
    std::uniform_int_distribution<int> side(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double gap = sc.rover.radius + (unit(rng) - 0.5) * 0.04;
    switch (side(rng)) {
        case 0: s.x = r.x_min - gap; s.y = r.y_min + unit(rng) * (r.y_max - r.y_min); break;
        case 1: s.x = r.x_max + gap; s.y = r.y_min + unit(rng) * (r.y_max - r.y_min); break;
        case 2: s.y = r.y_min - gap; s.x = r.x_min + unit(rng) * (r.x_max - r.x_min); break;
        default: s.y = r.y_max + gap; s.x = r.x_min + unit(rng) * (r.x_max - r.x_min); break;
    }
    return s;
}

}  // namespace oracle
