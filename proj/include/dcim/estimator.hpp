#pragma once

// End-to-end runs: several independently seeded optimizations on one
// nameplate, the best feasible result, a quantity/error table, side-by-side
// method comparisons, and curve datasets for plotting.

#include <optional>
#include <string>

#include "abc.hpp"
#include "ga.hpp"
#include "objective.hpp"
#include "pso.hpp"

namespace dcim {

enum class Method { abc, pso, ga };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::abc: return "abc";
        case Method::pso: return "pso";
        case Method::ga: return "ga";
    }
    return "?";
}

inline std::optional<Method> method_from_name(const std::string& name) {
    if (name == "abc") return Method::abc;
    if (name == "pso") return Method::pso;
    if (name == "ga") return Method::ga;
    return std::nullopt;
}

struct QuantityRow {
    const char* quantity;
    double manufacturer = 0.0;
    double calculated = 0.0;
    double error_pct = 0.0;  // 100 * |calculated - manufacturer| / manufacturer
};

using QuantityTable = std::array<QuantityRow, 6>;

// The six derived quantities lined up against the nameplate.
inline QuantityTable derived_quantities(const CircuitParams& p, const Nameplate& n) {
    const SteadyState start = steady_state(p, n, 1.0);
    const SteadyState full = steady_state(p, n, n.s_full_load);
    const MaxTorque peak = find_max_torque(p, n);
    auto row = [](const char* name, double mf, double cal) {
        return QuantityRow{name, mf, cal, 100.0 * std::abs(cal - mf) / mf};
    };
    return {row("T_st", n.t_start, start.torque),
            row("T_fl", n.t_full_load, full.torque),
            row("T_Max", n.t_max, peak.t_max),
            row("I_st", n.i_start, std::abs(start.i_stator)),
            row("I_fl", n.i_full_load, std::abs(full.i_stator)),
            row("PF_fl", n.pf_full_load, full.power_factor)};
}

struct RestartOutcome {
    std::uint64_t seed = 0;
    double cost = 0.0;  // penalized cost of the reported candidate
    bool feasible = false;
};

struct EstimationReport {
    std::string method;
    CircuitParams params;
    QuantityTable quantities{};
    double cost = 0.0;  // total of the winning candidate (== penalized; it is feasible)
    std::vector<RestartOutcome> restarts;
    std::uint64_t winning_seed = 0;
    RunTrace trace;  // winning restart
};

struct RunSettings {
    int population = 120;
    int iterations = 100;
    int limit = 10;        // abc only
    double phi_max = 0.5;  // abc only
    std::uint64_t base_seed = 42;
    int restarts = 10;
    int workers = 1;
    double penalty_weight = default_penalty_weight;

    void validate() const {
        if (restarts < 1)
            throw std::invalid_argument("run settings: restarts must be at least 1");
        if (workers < 1)
            throw std::invalid_argument("run settings: workers must be at least 1");
        if (!(penalty_weight > 0.0))
            throw std::invalid_argument("run settings: penalty_weight must be positive");
    }
};

// Raised when no restart produced a constraint-satisfying parameter set.
struct NoFeasibleSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
MinimizeResult run_method(Method method, F&& objective, const Bounds& bounds,
                          const RunSettings& s, std::uint64_t seed) {
    switch (method) {
        case Method::abc: {
            AbcConfig cfg;
            cfg.colony_size = s.population;
            cfg.max_iterations = s.iterations;
            cfg.limit = s.limit;
            cfg.phi_max = s.phi_max;
            cfg.rng_seed = seed;
            cfg.workers = s.workers;
            return abc_minimize(objective, bounds, cfg);
        }
        case Method::pso: {
            PsoConfig cfg;
            cfg.swarm_size = s.population;
            cfg.max_iterations = s.iterations;
            cfg.rng_seed = seed;
            cfg.workers = s.workers;
            return pso_minimize(objective, bounds, cfg);
        }
        case Method::ga: {
            GaConfig cfg;
            cfg.population = s.population;
            cfg.generations = s.iterations;
            cfg.rng_seed = seed;
            cfg.workers = s.workers;
            return ga_minimize(objective, bounds, cfg);
        }
    }
    throw std::logic_error("unknown method");
}

}  // namespace detail

// Runs `restarts` independent optimizations (seeds base_seed + index), keeps
// the lowest-cost feasible result. A restart whose best candidate violates
// the ordering constraints gets one cost-preserving repair attempt before the
// feasibility filter.
inline EstimationReport estimate(const Nameplate& nameplate, Method method,
                                 const SearchBounds& search_bounds, const RunSettings& settings) {
    nameplate.validate();
    search_bounds.validate();
    settings.validate();
    const Bounds bounds = search_bounds.to_bounds();

    auto objective = [&nameplate, &settings](const std::vector<double>& x) {
        return penalized_cost(CircuitParams::from_array(x), nameplate, settings.penalty_weight);
    };

    EstimationReport report;
    report.method = method_name(method);
    bool have_winner = false;
    double winner_cost = 0.0;

    for (int r = 0; r < settings.restarts; ++r) {
        const std::uint64_t seed = settings.base_seed + static_cast<std::uint64_t>(r);
        MinimizeResult run = detail::run_method(method, objective, bounds, settings, seed);

        CircuitParams candidate = CircuitParams::from_array(run.best_position);
        double candidate_cost = run.best_value;
        bool feasible = check_constraints(candidate, nameplate).all();
        if (!feasible) {
            const CircuitParams repaired = project_feasible(candidate, search_bounds);
            if (check_constraints(repaired, nameplate).all()) {
                candidate = repaired;
                candidate_cost = penalized_cost(candidate, nameplate, settings.penalty_weight);
                feasible = true;
            }
        }
        report.restarts.push_back({seed, candidate_cost, feasible});
        if (feasible && (!have_winner || candidate_cost < winner_cost)) {
            have_winner = true;
            winner_cost = candidate_cost;
            report.params = candidate;
            report.winning_seed = seed;
            report.trace = std::move(run.trace);
        }
    }

    if (!have_winner)
        throw NoFeasibleSolution("no feasible solution in " +
                                 std::to_string(settings.restarts) + " restart(s) of " +
                                 report.method);

    report.cost = cost(report.params, nameplate).total;
    report.quantities = derived_quantities(report.params, nameplate);
    return report;
}

struct MethodOutcome {
    std::string method;
    std::optional<EstimationReport> report;
    std::string error;  // set when the method failed
};

struct ReferenceColumn {
    CircuitParams params;
    QuantityTable quantities{};
};

struct Comparison {
    std::vector<MethodOutcome> methods;
    std::optional<ReferenceColumn> reference;
};

// Side-by-side study; one failing method does not abort the others.
inline Comparison compare_methods(const Nameplate& nameplate, const std::vector<Method>& methods,
                                  const std::optional<CircuitParams>& reference_params,
                                  const SearchBounds& search_bounds, const RunSettings& settings) {
    if (methods.empty())
        throw std::invalid_argument("compare_methods: need at least one method");
    Comparison out;
    for (Method m : methods) {
        MethodOutcome outcome;
        outcome.method = method_name(m);
        try {
            outcome.report = estimate(nameplate, m, search_bounds, settings);
        } catch (const std::exception& e) {
            outcome.error = e.what();
        }
        out.methods.push_back(std::move(outcome));
    }
    if (reference_params) {
        reference_params->validate();
        out.reference = ReferenceColumn{*reference_params,
                                        derived_quantities(*reference_params, nameplate)};
    }
    return out;
}

struct CurveAnchor {
    const char* curve;  // "torque" or "current"
    double slip = 0.0;
    double value = 0.0;
};

struct CurveSet {
    std::vector<std::pair<double, double>> torque;
    std::vector<std::pair<double, double>> current;
    std::vector<CurveAnchor> anchors;  // manufacturer stars: 3 torque + 2 current
};

// Sampled torque/current curves plus the nameplate anchor points. The
// maximum-torque anchor is placed at the model's own peak slip.
inline CurveSet emit_curves(const CircuitParams& params, const Nameplate& nameplate,
                            int n_points) {
    CurveSet out;
    out.torque = torque_curve(params, nameplate, n_points);
    out.current = current_curve(params, nameplate, n_points);
    const MaxTorque peak = find_max_torque(params, nameplate);
    out.anchors = {{"torque", 1.0, nameplate.t_start},
                   {"torque", peak.s_m, nameplate.t_max},
                   {"torque", nameplate.s_full_load, nameplate.t_full_load},
                   {"current", 1.0, nameplate.i_start},
                   {"current", nameplate.s_full_load, nameplate.i_full_load}};
    return out;
}

inline CurveSet emit_curves(const EstimationReport& report, const Nameplate& nameplate,
                            int n_points) {
    return emit_curves(report.params, nameplate, n_points);
}

}  // namespace dcim
