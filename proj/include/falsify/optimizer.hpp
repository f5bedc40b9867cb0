#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace falsify {

/// Axis-aligned box [lower, upper] the swarm searches over.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t dimension() const { return lower.size(); }
    [[nodiscard]] double range(std::size_t d) const { return upper[d] - lower[d]; }
    [[nodiscard]] bool contains(std::span<const double> point) const;

    /// Throws std::invalid_argument naming the violated invariant.
    void validate() const;

    bool operator==(const SearchSpace&) const = default;
};

struct SwarmParams {
    std::size_t swarm_size = 60;
    std::size_t max_iterations = 300;
    double inertia_weight = 0.7298;
    double cognitive_coefficient = 1.49618;
    double social_coefficient = 1.49618;
    /// Stop as soon as an evaluation is <= this value.
    double target_value = -std::numeric_limits<double>::infinity();
    /// Per-dimension velocity clamp as a fraction of the dimension's range.
    double max_velocity_fraction = 0.2;
    std::uint64_t seed = 1;

    void validate() const;

    bool operator==(const SwarmParams&) const = default;
};

/// Deterministic per-particle random stream (splitmix64-seeded xoshiro256**).
///
/// Every particle owns one stream, so the sequence of draws a particle sees
/// does not depend on the order in which other particles are processed.
class ParticleStream {
public:
    ParticleStream(std::uint64_t seed, std::uint64_t particle_index);

    std::uint64_t next();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

private:
    std::uint64_t state_[4];
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> personal_best_position;
    double personal_best_value = std::numeric_limits<double>::infinity();
};

struct Evaluation {
    std::vector<double> position;
    double value;
};

/// Complete swarm state between iterations.
struct Swarm {
    std::vector<Particle> particles;
    std::vector<ParticleStream> streams;
    std::vector<double> global_best_position;
    double global_best_value = std::numeric_limits<double>::infinity();
};

using Objective = std::function<double(std::span<const double>)>;

/// Wraps an objective: sanitizes non-finite values to +inf, records every
/// call in order, tracks the best point, and flags the first evaluation at or
/// below the target.
class EvaluationRecorder {
public:
    EvaluationRecorder(Objective objective, double target_value);

    double evaluate(std::span<const double> position);

    [[nodiscard]] bool target_reached() const { return target_reached_; }
    [[nodiscard]] const std::vector<Evaluation>& log() const { return log_; }
    std::vector<Evaluation> take_log() { return std::move(log_); }

private:
    Objective objective_;
    double target_value_;
    bool target_reached_ = false;
    std::vector<Evaluation> log_;
};

struct SwarmResult {
    std::vector<double> best_position;
    double best_value = std::numeric_limits<double>::infinity();
    std::size_t iterations_used = 0;
    bool terminated_early = false;
    std::size_t evaluations = 0;
    std::vector<Evaluation> visited_log;

    bool operator==(const SwarmResult& other) const;
};

/// Samples positions uniformly in the box and velocities uniformly within
/// +-max_velocity_fraction * range. Personal bests start at the initial
/// positions with value +inf (not yet evaluated).
Swarm init_swarm(const SearchSpace& space, const SwarmParams& params);

/// Evaluates every particle's current position in index order, updating
/// personal and global bests. Returns true if the recorder hit the target,
/// in which case the remaining particles are left unevaluated.
bool evaluate_swarm(Swarm& swarm, EvaluationRecorder& recorder);

/// One synchronous PSO iteration:
///   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x),   clamped per dimension
///   x <- x + v,                                          clamped to the box
/// followed by evaluate_swarm. Each particle draws r1[d] then r2[d] for every
/// dimension d, in order, from its own stream. A clamped position dimension has
/// its velocity zeroed. The global best used for the velocity update is the one
/// held at the start of the iteration.
bool step_swarm(Swarm& swarm, const SearchSpace& space, const SwarmParams& params,
                EvaluationRecorder& recorder);

/// Global-best PSO with per-evaluation early stopping at params.target_value.
SwarmResult pso_minimize(const Objective& objective, const SearchSpace& space,
                         const SwarmParams& params);

}  // namespace falsify
