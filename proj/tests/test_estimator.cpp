#include <catch_amalgamated.hpp>

#include "dcim/estimator.hpp"
#include "support/reference.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace dcim;

namespace {

// Small-but-real settings so the suite stays quick.
RunSettings quick_settings() {
    RunSettings s;
    s.population = 40;
    s.iterations = 30;
    s.restarts = 3;
    s.base_seed = 2024;
    return s;
}

}  // namespace

TEST_CASE("derived quantity table") {
    const Nameplate n = ref::motor_2200w();
    const QuantityTable table = derived_quantities(ref::pamp_params(), n);
    REQUIRE(std::string(table[0].quantity) == "T_st");
    REQUIRE(std::string(table[5].quantity) == "PF_fl");
    CHECK_THAT(table[0].calculated, WithinRel(ref::oracle_pamp::torque_s1, 1e-9));
    CHECK_THAT(table[2].calculated, WithinRel(ref::oracle_pamp::t_max, 1e-9));
    CHECK_THAT(table[4].calculated, WithinRel(ref::oracle_pamp::current_fl, 1e-9));
    for (const QuantityRow& row : table) {
        const double recomputed =
            100.0 * std::abs(row.calculated - row.manufacturer) / row.manufacturer;
        CHECK_THAT(row.error_pct, WithinAbs(recomputed, 1e-9));
    }
}

TEST_CASE("estimate") {
    const Nameplate n = ref::motor_2200w();
    const SearchBounds bounds;

    SECTION("abc produces a feasible report with consistent bookkeeping") {
        const EstimationReport report = estimate(n, Method::abc, bounds, quick_settings());
        CHECK(report.method == "abc");
        CHECK(check_constraints(report.params, n).all());
        REQUIRE(report.restarts.size() == 3);

        // winner holds the lowest feasible per-seed cost
        for (const RestartOutcome& r : report.restarts)
            if (r.feasible)
                CHECK(report.cost <= r.cost + 1e-15);
        bool winner_listed = false;
        for (const RestartOutcome& r : report.restarts)
            winner_listed = winner_listed || (r.seed == report.winning_seed && r.feasible);
        CHECK(winner_listed);

        // seeds derive from the base seed
        CHECK(report.restarts[0].seed == 2024);
        CHECK(report.restarts[2].seed == 2026);

        // quantity table recomputes from the stored parameters
        const QuantityTable again = derived_quantities(report.params, n);
        for (std::size_t q = 0; q < 6; ++q) {
            CHECK(report.quantities[q].calculated == again[q].calculated);
            CHECK(report.quantities[q].error_pct == again[q].error_pct);
        }
        CHECK_THAT(report.cost, WithinRel(cost(report.params, n).total, 1e-12));
        CHECK(report.trace.best_cost_per_iteration.size() == 30);
    }
    SECTION("deterministic for a fixed base seed") {
        const EstimationReport a = estimate(n, Method::abc, bounds, quick_settings());
        const EstimationReport b = estimate(n, Method::abc, bounds, quick_settings());
        CHECK(a.params.to_array() == b.params.to_array());
        CHECK(a.cost == b.cost);
        CHECK(a.winning_seed == b.winning_seed);
        CHECK(a.trace.best_cost_per_iteration == b.trace.best_cost_per_iteration);
    }
    SECTION("ga and pso reports satisfy the constraints too") {
        for (Method m : {Method::ga, Method::pso}) {
            const EstimationReport report = estimate(n, m, bounds, quick_settings());
            CHECK(check_constraints(report.params, n).all());
        }
    }
    SECTION("single restart works") {
        RunSettings s = quick_settings();
        s.restarts = 1;
        const EstimationReport report = estimate(n, Method::abc, bounds, s);
        CHECK(report.restarts.size() == 1);
        CHECK(report.winning_seed == s.base_seed);
    }
    SECTION("impossible torque bound reports no feasible solution") {
        // pin the search to a point whose peak torque misses the plate by far
        SearchBounds pinned;
        const CircuitParams p = ref::abc_params();
        auto fix = [](double v) { return Interval{v, v + 1e-9}; };
        pinned.r_s = fix(p.r_s);
        pinned.x_sd = fix(p.x_sd);
        pinned.x_m = fix(p.x_m);
        pinned.r_1 = fix(p.r_1);
        pinned.x_1d = fix(p.x_1d);
        pinned.r_2 = fix(p.r_2);
        pinned.x_2d = fix(p.x_2d);
        Nameplate wild = n;
        wild.t_max = 4.0 * ref::oracle_abc::t_max;  // |f3| ~ 0.75, way over 0.2
        wild.t_start = wild.t_max / 1.1;
        wild.t_full_load = 12.27;
        RunSettings s = quick_settings();
        s.restarts = 2;
        s.iterations = 5;
        CHECK_THROWS_AS(estimate(wild, Method::abc, pinned, s), NoFeasibleSolution);
    }
}

TEST_CASE("compare_methods") {
    const Nameplate n = ref::motor_2200w();
    const SearchBounds bounds;

    SECTION("single method, with the bundled reference column") {
        const Comparison cmp = compare_methods(n, {Method::abc}, ref::pamp_params(), bounds,
                                               quick_settings());
        REQUIRE(cmp.methods.size() == 1);
        REQUIRE(cmp.methods[0].report.has_value());
        REQUIRE(cmp.reference.has_value());

        // the deterministic reference column reproduces the published table
        const QuantityTable& q = cmp.reference->quantities;
        CHECK_THAT(q[0].calculated, WithinRel(ref::published_pamp.t_st, 0.02));
        CHECK_THAT(q[1].calculated, WithinRel(ref::published_pamp.t_fl, 0.02));
        CHECK_THAT(q[2].calculated, WithinRel(ref::published_pamp.t_max, 0.02));
        CHECK_THAT(q[3].calculated, WithinRel(ref::published_pamp.i_st, 0.02));
        CHECK_THAT(q[4].calculated, WithinRel(ref::published_pamp.i_fl, 0.02));
        CHECK_THAT(q[5].calculated, WithinRel(ref::published_pamp.pf, 0.02));
    }
    SECTION("no reference, no reference column") {
        const Comparison cmp =
            compare_methods(n, {Method::abc}, std::nullopt, bounds, quick_settings());
        CHECK_FALSE(cmp.reference.has_value());
    }
    SECTION("a failing method does not abort the others") {
        // same pinned-infeasible setup as the estimate test
        SearchBounds pinned;
        const CircuitParams p = ref::abc_params();
        auto fix = [](double v) { return Interval{v, v + 1e-9}; };
        pinned.r_s = fix(p.r_s);
        pinned.x_sd = fix(p.x_sd);
        pinned.x_m = fix(p.x_m);
        pinned.r_1 = fix(p.r_1);
        pinned.x_1d = fix(p.x_1d);
        pinned.r_2 = fix(p.r_2);
        pinned.x_2d = fix(p.x_2d);
        Nameplate wild = n;
        wild.t_max = 4.0 * ref::oracle_abc::t_max;
        wild.t_start = wild.t_max / 1.1;
        RunSettings s = quick_settings();
        s.iterations = 5;
        s.restarts = 1;
        const Comparison cmp =
            compare_methods(wild, {Method::abc, Method::ga}, std::nullopt, pinned, s);
        REQUIRE(cmp.methods.size() == 2);
        CHECK_FALSE(cmp.methods[0].report.has_value());
        CHECK_FALSE(cmp.methods[0].error.empty());
        CHECK_FALSE(cmp.methods[1].report.has_value());
    }
    SECTION("empty method list is rejected") {
        CHECK_THROWS_AS(compare_methods(n, {}, std::nullopt, bounds, quick_settings()),
                        std::invalid_argument);
    }
}

TEST_CASE("emit_curves") {
    const Nameplate n = ref::motor_2200w();
    const CurveSet curves = emit_curves(ref::abc_params(), n, 200);

    REQUIRE(curves.torque.size() == 200);
    REQUIRE(curves.current.size() == 200);
    CHECK_THAT(curves.torque.back().second, WithinRel(ref::published_abc.t_st, 0.02));

    int torque_anchors = 0, current_anchors = 0;
    for (const CurveAnchor& a : curves.anchors) {
        if (std::string(a.curve) == "torque")
            ++torque_anchors;
        else if (std::string(a.curve) == "current")
            ++current_anchors;
    }
    CHECK(torque_anchors == 3);
    CHECK(current_anchors == 2);

    // anchors carry the manufacturer values; the peak anchor sits at the
    // model's own peak slip
    CHECK(curves.anchors[0].slip == 1.0);
    CHECK(curves.anchors[0].value == n.t_start);
    CHECK_THAT(curves.anchors[1].slip, WithinAbs(ref::oracle_abc::s_m, 1e-6));
    CHECK(curves.anchors[1].value == n.t_max);
    CHECK(curves.anchors[2].slip == n.s_full_load);
    CHECK(curves.anchors[4].value == n.i_full_load);
}

TEST_CASE("run settings validation") {
    RunSettings s;
    s.restarts = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = RunSettings{};
    s.penalty_weight = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
