#include "falsify/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace falsify {

double Rect::diagonal() const { return std::hypot(x_max - x_min, y_max - y_min); }

void Rect::validate() const {
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
          std::isfinite(y_max))) {
        throw std::invalid_argument("rectangle coordinates must be finite");
    }
    if (!(x_min < x_max)) throw std::invalid_argument("rectangle requires x_min < x_max");
    if (!(y_min < y_max)) throw std::invalid_argument("rectangle requires y_min < y_max");
}

void ObstacleMap::validate() const {
    try {
        arena.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("arena: ") + e.what());
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const std::string where = "obstacles[" + std::to_string(i) + "]: ";
        try {
            obstacles[i].validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
        if (!obstacles[i].intersects(arena)) {
            throw std::invalid_argument(where + "obstacle must intersect the arena");
        }
    }
}

double point_rect_distance(Point p, const Rect& r) {
    const double dx = std::max({r.x_min - p.x, 0.0, p.x - r.x_max});
    const double dy = std::max({r.y_min - p.y, 0.0, p.y - r.y_max});
    return std::hypot(dx, dy);
}

double nearest_obstacle_distance(Point p, const ObstacleMap& map) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : map.obstacles) best = std::min(best, point_rect_distance(p, r));
    return best;
}

double min_distance_to_obstacles(Point p, const ObstacleMap& map, double rover_radius) {
    if (map.obstacles.empty()) return map.arena.diagonal();
    return std::max(0.0, nearest_obstacle_distance(p, map) - rover_radius);
}

double arena_clearance(Point p, const Rect& arena) {
    return std::min({p.x - arena.x_min, arena.x_max - p.x, p.y - arena.y_min, arena.y_max - p.y});
}

bool is_collision(Point p, double rover_radius, const ObstacleMap& map) {
    if (arena_clearance(p, map.arena) <= rover_radius) return true;
    return nearest_obstacle_distance(p, map) <= rover_radius;
}

std::optional<double> ray_rect_intersection(Point origin, Point direction, const Rect& r) {
    if (r.contains(origin)) return 0.0;

    double t_enter = 0.0;
    double t_exit = std::numeric_limits<double>::infinity();
    const double o[2] = {origin.x, origin.y};
    const double dir[2] = {direction.x, direction.y};
    const double lo[2] = {r.x_min, r.y_min};
    const double hi[2] = {r.x_max, r.y_max};
    for (int a = 0; a < 2; ++a) {
        if (dir[a] == 0.0) {
            if (o[a] < lo[a] || o[a] > hi[a]) return std::nullopt;
            continue;
        }
        double t0 = (lo[a] - o[a]) / dir[a];
        double t1 = (hi[a] - o[a]) / dir[a];
        if (t0 > t1) std::swap(t0, t1);
        t_enter = std::max(t_enter, t0);
        t_exit = std::min(t_exit, t1);
        if (t_enter > t_exit) return std::nullopt;
    }
    return t_enter;
}

double ray_exit_distance(Point origin, Point direction, const Rect& r) {
    if (!r.contains(origin)) return 0.0;
    double t_exit = std::numeric_limits<double>::infinity();
    if (direction.x > 0.0) t_exit = std::min(t_exit, (r.x_max - origin.x) / direction.x);
    if (direction.x < 0.0) t_exit = std::min(t_exit, (r.x_min - origin.x) / direction.x);
    if (direction.y > 0.0) t_exit = std::min(t_exit, (r.y_max - origin.y) / direction.y);
    if (direction.y < 0.0) t_exit = std::min(t_exit, (r.y_min - origin.y) / direction.y);
    return t_exit;
}

}  // namespace falsify
