#pragma once

// Global-best particle swarm over box bounds. Synchronous update: all
// velocity/position moves are drawn and applied, the batch is evaluated,
// then personal/global bests are refreshed in index order.

#include <cstdint>

#include "optimize.hpp"

namespace dcim {

struct PsoConfig {
    int swarm_size = 120;
    int max_iterations = 100;
    double inertia = 0.72;
    double cognitive = 1.49;
    double social = 1.49;
    std::uint64_t rng_seed = 0;
    int workers = 1;

    void validate() const {
        if (swarm_size < 1)
            throw std::invalid_argument("pso: swarm_size must be at least 1");
        if (max_iterations < 0)
            throw std::invalid_argument("pso: max_iterations must be non-negative");
        if (!(inertia >= 0.0) || !(cognitive >= 0.0) || !(social >= 0.0))
            throw std::invalid_argument("pso: coefficients must be non-negative");
        if (workers < 1)
            throw std::invalid_argument("pso: workers must be at least 1");
    }
};

template <class F>
MinimizeResult pso_minimize(F&& objective, const Bounds& bounds, const PsoConfig& cfg) {
    cfg.validate();
    validate_bounds(bounds);
    const std::size_t sw = static_cast<std::size_t>(cfg.swarm_size);
    const std::size_t dim = bounds.size();

    detail::rng_t rng(cfg.rng_seed);

    std::vector<double> v_max(dim);
    for (std::size_t d = 0; d < dim; ++d)
        v_max[d] = 0.5 * (bounds[d].hi - bounds[d].lo);

    std::vector<std::vector<double>> positions(sw);
    for (auto& pos : positions) {
        pos.resize(dim);
        for (std::size_t d = 0; d < dim; ++d)
            pos[d] = detail::uniform(rng, bounds[d].lo, bounds[d].hi);
    }
    std::vector<std::vector<double>> velocity(sw, std::vector<double>(dim, 0.0));
    std::vector<double> values = detail::evaluate_batch(positions, objective, cfg.workers);

    std::vector<std::vector<double>> best_pos = positions;
    std::vector<double> best_val = values;

    MinimizeResult result;
    result.trace.evaluations = sw;
    result.best_value = values[0];
    result.best_position = positions[0];
    for (std::size_t n = 1; n < sw; ++n) {
        if (values[n] < result.best_value) {
            result.best_value = values[n];
            result.best_position = positions[n];
        }
    }

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        for (std::size_t n = 0; n < sw; ++n) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double r1 = detail::uniform(rng, 0.0, 1.0);
                const double r2 = detail::uniform(rng, 0.0, 1.0);
                double vel = cfg.inertia * velocity[n][d] +
                             cfg.cognitive * r1 * (best_pos[n][d] - positions[n][d]) +
                             cfg.social * r2 * (result.best_position[d] - positions[n][d]);
                vel = std::clamp(vel, -v_max[d], v_max[d]);
                velocity[n][d] = vel;
                positions[n][d] = std::clamp(positions[n][d] + vel, bounds[d].lo, bounds[d].hi);
            }
        }
        values = detail::evaluate_batch(positions, objective, cfg.workers);
        result.trace.evaluations += sw;
        for (std::size_t n = 0; n < sw; ++n) {
            if (values[n] < best_val[n]) {
                best_val[n] = values[n];
                best_pos[n] = positions[n];
                if (values[n] < result.best_value) {
                    result.best_value = values[n];
                    result.best_position = positions[n];
                }
            }
        }
        result.trace.best_cost_per_iteration.push_back(result.best_value);
    }

    result.trace.best_position = result.best_position;
    return result;
}

}  // namespace dcim
