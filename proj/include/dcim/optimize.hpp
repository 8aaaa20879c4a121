#pragma once

// Shared pieces of the real-parameter minimizers: box bounds, candidate
// bookkeeping, the fitness map and roulette probabilities, and deterministic
// batch evaluation. Every random draw in the optimizers comes from one seeded
// stream consumed in a fixed serial order; worker threads only evaluate the
// objective, so results are reproducible under any worker count.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dcim {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

using Bounds = std::vector<Interval>;

inline void validate_bounds(const Bounds& bounds) {
    if (bounds.empty())
        throw std::invalid_argument("bounds must not be empty");
    for (const auto& iv : bounds)
        if (!(iv.lo <= iv.hi))
            throw std::invalid_argument("bounds: each interval needs lo <= hi");
}

struct Candidate {
    std::vector<double> position;
    double value = 0.0;
    double fitness = 0.0;
    int trials = 0;
};

// Best-cost history of one optimizer run.
struct RunTrace {
    std::vector<double> best_cost_per_iteration;
    std::vector<double> best_position;
    std::uint64_t evaluations = 0;
};

struct MinimizeResult {
    std::vector<double> best_position;
    double best_value = 0.0;
    RunTrace trace;
};

// fit = 1/(1+f) for f >= 0, 1+|f| for f < 0.
inline double fitness_of(double value) {
    return value >= 0.0 ? 1.0 / (1.0 + value) : 1.0 + std::abs(value);
}

// Roulette-wheel probabilities, proportional to fitness.
inline std::vector<double> selection_probabilities(std::span<const double> fitness) {
    if (fitness.empty())
        throw std::invalid_argument("selection_probabilities: empty colony");
    double sum = 0.0;
    for (double f : fitness) {
        if (!(f > 0.0))
            throw std::invalid_argument("selection_probabilities: fitness must be positive");
        sum += f;
    }
    std::vector<double> p(fitness.size());
    for (std::size_t i = 0; i < fitness.size(); ++i)
        p[i] = fitness[i] / sum;
    return p;
}

inline std::vector<double> selection_probabilities(const std::vector<Candidate>& colony) {
    std::vector<double> fit(colony.size());
    for (std::size_t i = 0; i < colony.size(); ++i)
        fit[i] = colony[i].fitness;
    return selection_probabilities(std::span<const double>{fit});
}

// Copy of x_n with component i moved by phi along (x_n - x_k), clamped.
inline std::vector<double> neighbor(std::span<const double> x_n, std::span<const double> x_k,
                                    std::size_t i, double phi, const Bounds& bounds) {
    std::vector<double> v(x_n.begin(), x_n.end());
    v[i] = std::clamp(v[i] + phi * (v[i] - x_k[i]), bounds[i].lo, bounds[i].hi);
    return v;
}

namespace detail {

using rng_t = std::mt19937_64;

inline double uniform(rng_t& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform index in [0, n).
inline std::size_t uniform_index(rng_t& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Uniform index in [0, n) excluding `skip`.
inline std::size_t uniform_other_index(rng_t& rng, std::size_t n, std::size_t skip) {
    std::size_t k = uniform_index(rng, n - 1);
    return k >= skip ? k + 1 : k;
}

// Evaluates a batch of positions; identical results for any worker count.
template <class F>
std::vector<double> evaluate_batch(const std::vector<std::vector<double>>& positions,
                                   F& objective, int workers) {
    std::vector<double> values(positions.size());
    if (workers <= 1 || positions.size() < 2) {
        for (std::size_t i = 0; i < positions.size(); ++i)
            values[i] = objective(positions[i]);
        return values;
    }
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(workers), positions.size());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < positions.size(); i += n_threads)
                values[i] = objective(positions[i]);
        });
    }
    for (auto& th : pool)
        th.join();
    return values;
}

}  // namespace detail

}  // namespace dcim
