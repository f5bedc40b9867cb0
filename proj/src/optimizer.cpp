#include "falsify/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace falsify {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

bool same_bits(double a, double b) {
    return a == b || (std::isnan(a) && std::isnan(b));
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](double x, double y) { return same_bits(x, y); });
}

}  // namespace

bool SearchSpace::contains(std::span<const double> point) const {
    if (point.size() != dimension()) return false;
    for (std::size_t d = 0; d < point.size(); ++d) {
        if (!(point[d] >= lower[d] && point[d] <= upper[d])) return false;
    }
    return true;
}

void SearchSpace::validate() const {
    if (lower.empty()) throw std::invalid_argument("search space dimension must be positive");
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("search space lower and upper must have equal length");
    }
    for (std::size_t d = 0; d < lower.size(); ++d) {
        if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d])) {
            throw std::invalid_argument("search space requires finite lower[" + std::to_string(d) +
                                        "] < upper[" + std::to_string(d) + "]");
        }
    }
}

void SwarmParams::validate() const {
    if (swarm_size < 2) throw std::invalid_argument("swarm_size must be >= 2");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(inertia_weight >= 0.0)) throw std::invalid_argument("inertia_weight must be >= 0");
    if (!(cognitive_coefficient >= 0.0)) {
        throw std::invalid_argument("cognitive_coefficient must be >= 0");
    }
    if (!(social_coefficient >= 0.0)) throw std::invalid_argument("social_coefficient must be >= 0");
    if (!(max_velocity_fraction > 0.0 && max_velocity_fraction <= 1.0)) {
        throw std::invalid_argument("max_velocity_fraction must be in (0, 1]");
    }
    if (std::isnan(target_value)) throw std::invalid_argument("target_value must not be NaN");
}

ParticleStream::ParticleStream(std::uint64_t seed, std::uint64_t particle_index) {
    // Derive a distinct sub-stream per particle from the campaign seed.
    std::uint64_t mix = seed;
    std::uint64_t base = splitmix64(mix);
    std::uint64_t sm = base ^ (particle_index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t ParticleStream::next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double ParticleStream::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

EvaluationRecorder::EvaluationRecorder(Objective objective, double target_value)
    : objective_(std::move(objective)), target_value_(target_value) {}

double EvaluationRecorder::evaluate(std::span<const double> position) {
    double value = objective_(position);
    if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
    log_.push_back({std::vector<double>(position.begin(), position.end()), value});
    if (value <= target_value_) target_reached_ = true;
    return value;
}

bool SwarmResult::operator==(const SwarmResult& other) const {
    if (!same_bits(best_position, other.best_position) || !same_bits(best_value, other.best_value) ||
        iterations_used != other.iterations_used || terminated_early != other.terminated_early ||
        evaluations != other.evaluations || visited_log.size() != other.visited_log.size()) {
        return false;
    }
    for (std::size_t i = 0; i < visited_log.size(); ++i) {
        if (!same_bits(visited_log[i].position, other.visited_log[i].position) ||
            !same_bits(visited_log[i].value, other.visited_log[i].value)) {
            return false;
        }
    }
    return true;
}

Swarm init_swarm(const SearchSpace& space, const SwarmParams& params) {
    const std::size_t dim = space.dimension();
    Swarm swarm;
    swarm.particles.resize(params.swarm_size);
    swarm.streams.reserve(params.swarm_size);
    for (std::size_t i = 0; i < params.swarm_size; ++i) {
        swarm.streams.emplace_back(params.seed, i);
        auto& stream = swarm.streams.back();
        auto& p = swarm.particles[i];
        p.position.resize(dim);
        p.velocity.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const double x = space.lower[d] + stream.uniform01() * space.range(d);
            p.position[d] = std::clamp(x, space.lower[d], space.upper[d]);
        }
        for (std::size_t d = 0; d < dim; ++d) {
            const double vmax = params.max_velocity_fraction * space.range(d);
            p.velocity[d] = (2.0 * stream.uniform01() - 1.0) * vmax;
        }
        p.personal_best_position = p.position;
    }
    swarm.global_best_position = swarm.particles.front().position;
    return swarm;
}

bool evaluate_swarm(Swarm& swarm, EvaluationRecorder& recorder) {
    for (auto& p : swarm.particles) {
        const double value = recorder.evaluate(p.position);
        if (value < p.personal_best_value) {
            p.personal_best_value = value;
            p.personal_best_position = p.position;
        }
        // Strict comparison in index order: lowest index wins ties.
        if (value < swarm.global_best_value) {
            swarm.global_best_value = value;
            swarm.global_best_position = p.position;
        }
        if (recorder.target_reached()) return true;
    }
    return false;
}

bool step_swarm(Swarm& swarm, const SearchSpace& space, const SwarmParams& params,
                EvaluationRecorder& recorder) {
    const std::size_t dim = space.dimension();
    const std::vector<double>& gbest = swarm.global_best_position;
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        auto& p = swarm.particles[i];
        auto& stream = swarm.streams[i];
        for (std::size_t d = 0; d < dim; ++d) {
            const double r1 = stream.uniform01();
            const double r2 = stream.uniform01();
            const double vmax = params.max_velocity_fraction * space.range(d);
            double v = params.inertia_weight * p.velocity[d] +
                       params.cognitive_coefficient * r1 * (p.personal_best_position[d] - p.position[d]) +
                       params.social_coefficient * r2 * (gbest[d] - p.position[d]);
            v = std::clamp(v, -vmax, vmax);
            double x = p.position[d] + v;
            if (x < space.lower[d]) {
                x = space.lower[d];
                v = 0.0;
            } else if (x > space.upper[d]) {
                x = space.upper[d];
                v = 0.0;
            }
            p.position[d] = x;
            p.velocity[d] = v;
        }
    }
    return evaluate_swarm(swarm, recorder);
}

SwarmResult pso_minimize(const Objective& objective, const SearchSpace& space,
                         const SwarmParams& params) {
    space.validate();
    params.validate();

    EvaluationRecorder recorder(objective, params.target_value);
    Swarm swarm = init_swarm(space, params);

    SwarmResult result;
    bool stopped = evaluate_swarm(swarm, recorder);
    while (!stopped && result.iterations_used < params.max_iterations) {
        ++result.iterations_used;
        stopped = step_swarm(swarm, space, params, recorder);
    }

    result.terminated_early = stopped;
    result.best_position = swarm.global_best_position;
    result.best_value = swarm.global_best_value;
    result.visited_log = recorder.take_log();
    result.evaluations = result.visited_log.size();
    return result;
}

}  // namespace falsify
