#pragma once

#include <optional>
#include <vector>

namespace falsify {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// Closed axis-aligned rectangle, meters.
struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    [[nodiscard]] bool contains(Point p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    [[nodiscard]] bool intersects(const Rect& other) const {
        return x_min <= other.x_max && other.x_min <= x_max && y_min <= other.y_max &&
               other.y_min <= y_max;
    }
    [[nodiscard]] double diagonal() const;

    /// Throws std::invalid_argument if x_min >= x_max or y_min >= y_max.
    void validate() const;

    bool operator==(const Rect&) const = default;
};

struct ObstacleMap {
    Rect arena;
    std::vector<Rect> obstacles;

    void validate() const;

    bool operator==(const ObstacleMap&) const = default;
};

/// Euclidean distance from p to the closed rectangle; 0 inside or on the boundary.
double point_rect_distance(Point p, const Rect& r);

/// Center distance to the nearest obstacle, infinity if there are none.
double nearest_obstacle_distance(Point p, const ObstacleMap& map);

/// Clearance between a disc of radius rover_radius centered at p and the
/// nearest obstacle: max(0, center distance - rover_radius). With no obstacles
/// the arena diagonal is returned as a finite sentinel.
double min_distance_to_obstacles(Point p, const ObstacleMap& map, double rover_radius);

/// Signed distance from p to the arena boundary, positive inside.
double arena_clearance(Point p, const Rect& arena);

/// True if the disc touches or overlaps an obstacle, or touches or leaves the
/// arena boundary. Both conditions are closed.
bool is_collision(Point p, double rover_radius, const ObstacleMap& map);

/// Smallest t >= 0 with origin + t * direction on the closed rectangle (slab
/// method). 0 when the origin lies inside.
std::optional<double> ray_rect_intersection(Point origin, Point direction, const Rect& r);

/// Distance along the ray from an interior origin to the rectangle's boundary.
/// 0 when the origin is outside.
double ray_exit_distance(Point origin, Point direction, const Rect& r);

}  // namespace falsify
