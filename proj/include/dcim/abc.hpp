#pragma once

// Artificial bee colony over box bounds, with two departures from the
// textbook algorithm: several candidates may be rescued per iteration, and
// rescued (scout) candidates move relative to the best solution found so far
// instead of re-sampling the box at random.
//
// Each iteration runs three phases. Draws for a whole phase are taken from
// the seeded stream first, the proposals are evaluated (optionally on worker
// threads), and colony updates are applied serially in index order, so a run
// is reproducible bit-for-bit for a fixed seed under any worker count.

#include <cstdint>
#include <utility>

#include "optimize.hpp"

namespace dcim {

struct AbcConfig {
    int colony_size = 120;
    int max_iterations = 100;
    int limit = 10;         // failed-improvement count that triggers a rescue
    double phi_max = 0.5;   // step factor drawn uniformly from [-phi_max, phi_max]
    std::uint64_t rng_seed = 0;
    int workers = 1;

    void validate() const {
        if (colony_size < 2)
            throw std::invalid_argument("abc: colony_size must be at least 2");
        if (max_iterations < 0)
            throw std::invalid_argument("abc: max_iterations must be non-negative");
        if (limit < 1)
            throw std::invalid_argument("abc: limit must be at least 1");
        if (!(phi_max > 0.0 && phi_max <= 1.0))
            throw std::invalid_argument("abc: phi_max must lie in (0, 1]");
        if (workers < 1)
            throw std::invalid_argument("abc: workers must be at least 1");
    }
};

// Uniform random colony over the bounds; deterministic for a fixed seed.
template <class F>
std::vector<Candidate> init_colony(const Bounds& bounds, const AbcConfig& cfg, F&& objective) {
    cfg.validate();
    validate_bounds(bounds);
    detail::rng_t rng(cfg.rng_seed);
    const std::size_t sn = static_cast<std::size_t>(cfg.colony_size);
    std::vector<std::vector<double>> positions(sn);
    for (auto& pos : positions) {
        pos.resize(bounds.size());
        for (std::size_t d = 0; d < bounds.size(); ++d)
            pos[d] = detail::uniform(rng, bounds[d].lo, bounds[d].hi);
    }
    const std::vector<double> values = detail::evaluate_batch(positions, objective, cfg.workers);
    std::vector<Candidate> colony(sn);
    for (std::size_t i = 0; i < sn; ++i)
        colony[i] = Candidate{std::move(positions[i]), values[i], fitness_of(values[i]), 0};
    return colony;
}

namespace detail {

struct MovePlan {
    std::size_t source;
    std::size_t partner;
    std::size_t component;
    double phi;
};

}  // namespace detail

template <class F>
MinimizeResult abc_minimize(F&& objective, const Bounds& bounds, const AbcConfig& cfg) {
    cfg.validate();
    validate_bounds(bounds);
    const std::size_t sn = static_cast<std::size_t>(cfg.colony_size);
    const std::size_t dim = bounds.size();

    detail::rng_t rng(cfg.rng_seed);

    // Initial colony (same draw order as init_colony).
    std::vector<std::vector<double>> positions(sn);
    for (auto& pos : positions) {
        pos.resize(dim);
        for (std::size_t d = 0; d < dim; ++d)
            pos[d] = detail::uniform(rng, bounds[d].lo, bounds[d].hi);
    }
    std::vector<double> values = detail::evaluate_batch(positions, objective, cfg.workers);
    std::vector<Candidate> colony(sn);
    for (std::size_t i = 0; i < sn; ++i)
        colony[i] = Candidate{std::move(positions[i]), values[i], fitness_of(values[i]), 0};

    MinimizeResult result;
    result.trace.evaluations = sn;
    result.best_value = colony[0].value;
    result.best_position = colony[0].position;
    for (const Candidate& c : colony) {
        if (c.value < result.best_value) {
            result.best_value = c.value;
            result.best_position = c.position;
        }
    }

    auto draw_move = [&](std::size_t source) {
        detail::MovePlan mv;
        mv.source = source;
        mv.partner = detail::uniform_other_index(rng, sn, source);
        mv.component = detail::uniform_index(rng, dim);
        mv.phi = detail::uniform(rng, -cfg.phi_max, cfg.phi_max);
        return mv;
    };

    // Greedy replacement against the candidate's current value.
    auto apply_greedy = [&](const detail::MovePlan& mv, std::vector<double>&& proposal,
                            double value) {
        Candidate& c = colony[mv.source];
        if (value < c.value) {
            c.position = std::move(proposal);
            c.value = value;
            c.fitness = fitness_of(value);
            c.trials = 0;
            if (value < result.best_value) {
                result.best_value = value;
                result.best_position = c.position;
            }
        } else {
            ++c.trials;
        }
    };

    std::vector<detail::MovePlan> plans;
    std::vector<std::vector<double>> proposals;
    plans.reserve(sn);
    proposals.reserve(sn);

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        // Employed phase: one move per candidate, around itself.
        plans.clear();
        proposals.clear();
        for (std::size_t n = 0; n < sn; ++n) {
            plans.push_back(draw_move(n));
            const detail::MovePlan& mv = plans.back();
            proposals.push_back(neighbor(colony[n].position, colony[mv.partner].position,
                                         mv.component, mv.phi, bounds));
        }
        std::vector<double> batch = detail::evaluate_batch(proposals, objective, cfg.workers);
        result.trace.evaluations += batch.size();
        for (std::size_t n = 0; n < sn; ++n)
            apply_greedy(plans[n], std::move(proposals[n]), batch[n]);

        // Onlooker phase: sn roulette draws over fitness, same move rule.
        const std::vector<double> probs = selection_probabilities(colony);
        std::vector<double> cumulative(sn);
        double acc = 0.0;
        for (std::size_t i = 0; i < sn; ++i) {
            acc += probs[i];
            cumulative[i] = acc;
        }
        plans.clear();
        proposals.clear();
        for (std::size_t draw = 0; draw < sn; ++draw) {
            const double u = detail::uniform(rng, 0.0, 1.0);
            std::size_t source = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            if (source >= sn)
                source = sn - 1;
            plans.push_back(draw_move(source));
            const detail::MovePlan& mv = plans.back();
            proposals.push_back(neighbor(colony[source].position, colony[mv.partner].position,
                                         mv.component, mv.phi, bounds));
        }
        batch = detail::evaluate_batch(proposals, objective, cfg.workers);
        result.trace.evaluations += batch.size();
        for (std::size_t j = 0; j < plans.size(); ++j)
            apply_greedy(plans[j], std::move(proposals[j]), batch[j]);

        // Scout phase: exhausted candidates restart near the best-so-far.
        plans.clear();
        proposals.clear();
        for (std::size_t n = 0; n < sn; ++n) {
            if (colony[n].trials < cfg.limit)
                continue;
            detail::MovePlan mv;
            mv.source = n;
            mv.partner = detail::uniform_index(rng, sn);
            mv.component = detail::uniform_index(rng, dim);
            mv.phi = detail::uniform(rng, -cfg.phi_max, cfg.phi_max);
            plans.push_back(mv);
            proposals.push_back(neighbor(result.best_position, colony[mv.partner].position,
                                         mv.component, mv.phi, bounds));
        }
        if (!plans.empty()) {
            batch = detail::evaluate_batch(proposals, objective, cfg.workers);
            result.trace.evaluations += batch.size();
            for (std::size_t j = 0; j < plans.size(); ++j) {
                Candidate& c = colony[plans[j].source];
                c.position = std::move(proposals[j]);
                c.value = batch[j];
                c.fitness = fitness_of(batch[j]);
                c.trials = 0;
                if (c.value < result.best_value) {
                    result.best_value = c.value;
                    result.best_position = c.position;
                }
            }
        }

        result.trace.best_cost_per_iteration.push_back(result.best_value);
    }

    result.trace.best_position = result.best_position;
    return result;
}

}  // namespace dcim
