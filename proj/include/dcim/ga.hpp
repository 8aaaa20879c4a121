#pragma once

// Real-coded genetic algorithm: size-2 tournaments, per-gene blend (BLX)
// crossover, Gaussian mutation scaled to the box span, one elite carried
// over unchanged per generation.

#include <cstdint>

#include "optimize.hpp"

namespace dcim {

struct GaConfig {
    int population = 120;
    int generations = 100;
    int tournament_size = 2;
    double blend_alpha = 0.5;
    double mutation_sigma = 0.05;  // fraction of each interval's span
    double mutation_rate = 0.1;    // per-gene probability
    int elite_count = 1;
    std::uint64_t rng_seed = 0;
    int workers = 1;

    void validate() const {
        if (population < 1)
            throw std::invalid_argument("ga: population must be at least 1");
        if (generations < 0)
            throw std::invalid_argument("ga: generations must be non-negative");
        if (tournament_size < 1)
            throw std::invalid_argument("ga: tournament_size must be at least 1");
        if (!(blend_alpha >= 0.0))
            throw std::invalid_argument("ga: blend_alpha must be non-negative");
        if (!(mutation_sigma >= 0.0) || !(mutation_rate >= 0.0 && mutation_rate <= 1.0))
            throw std::invalid_argument("ga: bad mutation parameters");
        if (elite_count < 0 || elite_count >= population + 1)
            throw std::invalid_argument("ga: elite_count must lie in [0, population]");
        if (workers < 1)
            throw std::invalid_argument("ga: workers must be at least 1");
    }
};

template <class F>
MinimizeResult ga_minimize(F&& objective, const Bounds& bounds, const GaConfig& cfg) {
    cfg.validate();
    validate_bounds(bounds);
    const std::size_t pop = static_cast<std::size_t>(cfg.population);
    const std::size_t dim = bounds.size();

    detail::rng_t rng(cfg.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> span(dim);
    for (std::size_t d = 0; d < dim; ++d)
        span[d] = bounds[d].hi - bounds[d].lo;

    std::vector<std::vector<double>> genomes(pop);
    for (auto& g : genomes) {
        g.resize(dim);
        for (std::size_t d = 0; d < dim; ++d)
            g[d] = detail::uniform(rng, bounds[d].lo, bounds[d].hi);
    }
    std::vector<double> values = detail::evaluate_batch(genomes, objective, cfg.workers);

    MinimizeResult result;
    result.trace.evaluations = pop;
    result.best_value = values[0];
    result.best_position = genomes[0];
    for (std::size_t n = 1; n < pop; ++n) {
        if (values[n] < result.best_value) {
            result.best_value = values[n];
            result.best_position = genomes[n];
        }
    }

    auto tournament_pick = [&]() -> std::size_t {
        std::size_t winner = detail::uniform_index(rng, pop);
        for (int t = 1; t < cfg.tournament_size; ++t) {
            const std::size_t rival = detail::uniform_index(rng, pop);
            if (values[rival] < values[winner])
                winner = rival;
        }
        return winner;
    };

    const std::size_t elites = std::min<std::size_t>(static_cast<std::size_t>(cfg.elite_count), pop);

    for (int gen = 0; gen < cfg.generations; ++gen) {
        // elites of the current generation (lowest index wins ties)
        std::size_t best_n = 0;
        for (std::size_t n = 1; n < pop; ++n)
            if (values[n] < values[best_n])
                best_n = n;
        std::vector<std::vector<double>> offspring;
        offspring.reserve(pop - elites);
        while (offspring.size() + elites < pop) {
            const std::vector<double>& p1 = genomes[tournament_pick()];
            const std::vector<double>& p2 = genomes[tournament_pick()];
            std::vector<double> child(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                const double lo = std::min(p1[d], p2[d]);
                const double hi = std::max(p1[d], p2[d]);
                const double spread = cfg.blend_alpha * (hi - lo);
                child[d] = detail::uniform(rng, lo - spread, hi + spread);
            }
            for (std::size_t d = 0; d < dim; ++d) {
                if (detail::uniform(rng, 0.0, 1.0) < cfg.mutation_rate)
                    child[d] += gauss(rng) * cfg.mutation_sigma * span[d];
                child[d] = std::clamp(child[d], bounds[d].lo, bounds[d].hi);
            }
            offspring.push_back(std::move(child));
        }
        const std::vector<double> offspring_values =
            detail::evaluate_batch(offspring, objective, cfg.workers);
        result.trace.evaluations += offspring_values.size();

        std::vector<std::vector<double>> next_genomes;
        std::vector<double> next_values;
        next_genomes.reserve(pop);
        next_values.reserve(pop);
        if (elites > 0) {
            next_genomes.push_back(genomes[best_n]);
            next_values.push_back(values[best_n]);
        }
        for (std::size_t j = 0; j < offspring.size(); ++j) {
            next_genomes.push_back(std::move(offspring[j]));
            next_values.push_back(offspring_values[j]);
        }
        genomes = std::move(next_genomes);
        values = std::move(next_values);

        for (std::size_t n = 0; n < pop; ++n) {
            if (values[n] < result.best_value) {
                result.best_value = values[n];
                result.best_position = genomes[n];
            }
        }
        result.trace.best_cost_per_iteration.push_back(result.best_value);
    }

    result.trace.best_position = result.best_position;
    return result;
}

}  // namespace dcim
