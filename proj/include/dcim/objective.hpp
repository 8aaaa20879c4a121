#pragma once

// Constrained sum-of-squared-relative-errors cost over a nameplate: six
// signed residuals between model-derived and manufacturer quantities, plus
// penalty handling for the inequality constraints
//   (a) all seven parameters positive,
//   (b) r_2 > r_1,
//   (c) x_1d > x_2d,
//   (d) |max-torque residual| <= 0.2.
// Positivity is never penalized; the search bounds keep parameters positive.

#include <cmath>
#include <cstddef>

#include "motor_model.hpp"
#include "optimize.hpp"

namespace dcim {

constexpr double default_penalty_weight = 1e3;

struct CostBreakdown {
    double f1 = 0.0;  // full-load torque residual
    double f2 = 0.0;  // starting torque residual
    double f3 = 0.0;  // maximum torque residual
    double f4 = 0.0;  // full-load power factor residual
    double f5 = 0.0;  // starting current residual
    double f6 = 0.0;  // full-load current residual
    double total = 0.0;
    double penalty = 0.0;  // at default_penalty_weight
    bool feasible = false;
};

struct ConstraintReport {
    bool positive = false;
    bool cage_resistance_order = false;  // r_2 > r_1
    bool cage_reactance_order = false;   // x_1d > x_2d
    bool max_torque_bound = false;       // |f3| <= 0.2
    double positive_violation = 0.0;
    double cage_resistance_slack = 0.0;
    double cage_reactance_slack = 0.0;
    double max_torque_slack = 0.0;

    bool all() const {
        return positive && cage_resistance_order && cage_reactance_order && max_torque_bound;
    }
    // Sum of the penalized violation magnitudes (orderings and torque bound).
    double penalized_violation() const {
        return cage_resistance_slack + cage_reactance_slack + max_torque_slack;
    }
};

// Signed relative errors, (calculated - manufacturer) / manufacturer.
// f1/f4/f6 at the full-load slip, f2/f5 at standstill, f3 from the torque peak.
inline CostBreakdown residuals(const CircuitParams& p, const Nameplate& n) {
    CostBreakdown out;
    const SteadyState full = steady_state(p, n, n.s_full_load);
    const SteadyState start = steady_state(p, n, 1.0);
    const MaxTorque peak = find_max_torque(p, n);
    out.f1 = (full.torque - n.t_full_load) / n.t_full_load;
    out.f2 = (start.torque - n.t_start) / n.t_start;
    out.f3 = (peak.t_max - n.t_max) / n.t_max;
    out.f4 = (full.power_factor - n.pf_full_load) / n.pf_full_load;
    out.f5 = (std::abs(start.i_stator) - n.i_start) / n.i_start;
    out.f6 = (std::abs(full.i_stator) - n.i_full_load) / n.i_full_load;
    out.total = out.f1 * out.f1 + out.f2 * out.f2 + out.f3 * out.f3 +
                out.f4 * out.f4 + out.f5 * out.f5 + out.f6 * out.f6;
    return out;
}

namespace detail {

// Constraint arithmetic given an already-evaluated max-torque residual.
inline ConstraintReport constraints_with_f3(const CircuitParams& p, double f3) {
    ConstraintReport rep;
    rep.positive = true;
    for (double v : p.to_array()) {
        if (!(v > 0.0)) {
            rep.positive = false;
            rep.positive_violation = std::max(rep.positive_violation, -v);
        }
    }
    rep.cage_resistance_order = p.r_2 > p.r_1;
    rep.cage_resistance_slack = rep.cage_resistance_order ? 0.0 : p.r_1 - p.r_2;
    rep.cage_reactance_order = p.x_1d > p.x_2d;
    rep.cage_reactance_slack = rep.cage_reactance_order ? 0.0 : p.x_2d - p.x_1d;
    rep.max_torque_bound = std::abs(f3) <= 0.2;
    rep.max_torque_slack = rep.max_torque_bound ? 0.0 : std::abs(f3) - 0.2;
    return rep;
}

}  // namespace detail

inline ConstraintReport check_constraints(const CircuitParams& p, const Nameplate& n) {
    bool positive = true;
    for (double v : p.to_array())
        positive = positive && v > 0.0;
    if (!positive) {
        // Cannot evaluate the torque peak; report the bound as unmet.
        ConstraintReport rep = detail::constraints_with_f3(p, 0.0);
        rep.max_torque_bound = false;
        rep.max_torque_slack = 0.0;
        return rep;
    }
    const MaxTorque peak = find_max_torque(p, n);
    return detail::constraints_with_f3(p, (peak.t_max - n.t_max) / n.t_max);
}

inline CostBreakdown cost(const CircuitParams& p, const Nameplate& n) {
    CostBreakdown out = residuals(p, n);
    const ConstraintReport rep = detail::constraints_with_f3(p, out.f3);
    out.penalty = default_penalty_weight * rep.penalized_violation();
    out.feasible = rep.all();
    return out;
}

// What the optimizers minimize: total plus weighted constraint violations.
inline double penalized_cost(const CircuitParams& p, const Nameplate& n,
                             double penalty_weight = default_penalty_weight) {
    const CostBreakdown c = residuals(p, n);
    const ConstraintReport rep = detail::constraints_with_f3(p, c.f3);
    return c.total + penalty_weight * rep.penalized_violation();
}

// Per-parameter search box. Defaults span the plausible range for low-voltage
// machines with generous margin; configurable from the CLI.
struct SearchBounds {
    Interval r_s{0.01, 10.0};
    Interval x_sd{0.01, 5.0};
    Interval x_m{5.0, 100.0};
    Interval r_1{0.01, 10.0};
    Interval x_1d{0.01, 5.0};
    Interval r_2{0.01, 10.0};
    Interval x_2d{0.01, 5.0};

    std::array<Interval, CircuitParams::count> to_array() const {
        return {r_s, x_sd, x_m, r_1, x_1d, r_2, x_2d};
    }
    Bounds to_bounds() const {
        const auto a = to_array();
        return Bounds(a.begin(), a.end());
    }
    void validate() const {
        const auto a = to_array();
        const auto labels = CircuitParams::names();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(0.0 < a[i].lo && a[i].lo < a[i].hi))
                throw std::invalid_argument(std::string("bounds: interval for ") + labels[i] +
                                            " needs 0 < lo < hi");
    }
};

// Cost-preserving repair of the ordering constraints. A full cage swap leaves
// every derived quantity unchanged, so it is tried first when both orderings
// are mirrored; a single violated ordering gets a midpoint nudge with a small
// relative margin. The torque bound is not repairable here.
inline CircuitParams project_feasible(const CircuitParams& p,
                                      const SearchBounds& bounds = SearchBounds{}) {
    CircuitParams q = p;
    const bool r_bad = !(q.r_2 > q.r_1);
    const bool x_bad = !(q.x_1d > q.x_2d);
    if (r_bad && x_bad) {
        std::swap(q.r_1, q.r_2);
        std::swap(q.x_1d, q.x_2d);
    }
    auto nudge_apart = [](double& low_side, double& high_side, const Interval& low_iv,
                          const Interval& high_iv) {
        double mid = 0.5 * (low_side + high_side);
        const double margin = std::max(1e-12, 1e-7 * std::abs(mid));
        const double lo = std::max(low_iv.lo, high_iv.lo) + margin;
        const double hi = std::min(low_iv.hi, high_iv.hi) - margin;
        if (lo > hi)
            return;  // disjoint custom intervals; leave for the feasibility filter
        mid = std::clamp(mid, lo, hi);
        low_side = mid - margin;
        high_side = mid + margin;
    };
    if (!(q.r_2 > q.r_1))
        nudge_apart(q.r_1, q.r_2, bounds.r_1, bounds.r_2);
    if (!(q.x_1d > q.x_2d))
        nudge_apart(q.x_2d, q.x_1d, bounds.x_2d, bounds.x_1d);
    return q;
}

}  // namespace dcim
