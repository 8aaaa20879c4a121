// Acceptance suite. Each numbered criterion prints one [PASS]/[FAIL] line;
// the process exits non-zero if any criterion fails.

#include <chrono>
#include <complex>
#include <cstdio>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "dcim/cli.hpp"
#include "support/reference.hpp"

using namespace dcim;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok)
        ++g_failures;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct QuantityCheck {
    const char* name;
    double calculated;
    double published;
};

// max relative deviation across the six derived quantities
double max_rel_dev(const std::vector<QuantityCheck>& rows) {
    double worst = 0.0;
    for (const auto& r : rows)
        worst = std::max(worst, std::abs(r.calculated - r.published) / std::abs(r.published));
    return worst;
}

std::vector<QuantityCheck> derive_vs_published(const CircuitParams& p, const Nameplate& n,
                                               const ref::Published& pub) {
    const SteadyState start = steady_state(p, n, 1.0);
    const SteadyState full = steady_state(p, n, n.s_full_load);
    const MaxTorque peak = find_max_torque(p, n);
    return {{"T_st", start.torque, pub.t_st},
            {"T_fl", full.torque, pub.t_fl},
            {"T_Max", peak.t_max, pub.t_max},
            {"I_st", std::abs(start.i_stator), pub.i_st},
            {"I_fl", std::abs(full.i_stator), pub.i_fl},
            {"PF_fl", full.power_factor, pub.pf}};
}

CircuitParams random_feasible_params(std::mt19937_64& rng) {
    auto u = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    CircuitParams p{u(0.01, 10.0), u(0.01, 5.0), u(5.0, 100.0), u(0.01, 10.0),
                    u(0.01, 5.0),  u(0.01, 10.0), u(0.01, 5.0)};
    if (p.r_2 <= p.r_1)
        std::swap(p.r_1, p.r_2);
    if (p.x_1d <= p.x_2d)
        std::swap(p.x_1d, p.x_2d);
    return p;
}

// Stand-alone torque evaluation used as the grid-scan oracle: plain
// std::complex arithmetic, branch currents, branch powers.
double oracle_torque(const CircuitParams& p, const Nameplate& n, double s) {
    const std::complex<double> z1{p.r_1 / s, p.x_1d};
    const std::complex<double> z2{p.r_2 / s, p.x_2d};
    const std::complex<double> ym{0.0, 1.0 / p.x_m};
    const std::complex<double> zp = 1.0 / (ym + 1.0 / z1 + 1.0 / z2);
    const std::complex<double> zt = std::complex<double>{p.r_s, p.x_sd} + zp;
    const std::complex<double> i = n.phase_voltage() / zt;
    const std::complex<double> v_node = zp * i;
    const std::complex<double> i1 = v_node / z1;
    const std::complex<double> i2 = v_node / z2;
    return 3.0 * n.pole_pairs / n.electrical_speed() *
           (std::norm(i1) * p.r_1 / s + std::norm(i2) * p.r_2 / s);
}

double sphere(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x)
        acc += v * v;
    return acc;
}

char buffer[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
    std::snprintf(buffer, sizeof(buffer), f, args...);
    return buffer;
}

}  // namespace

int main() {
    const Nameplate nameplate = ref::motor_2200w();

    // 1. deterministic model anchor, first reference column
    {
        const auto t0 = clock_type::now();
        const auto rows = derive_vs_published(ref::pamp_params(), nameplate, ref::published_pamp);
        const double elapsed = seconds_since(t0);
        const double worst = max_rel_dev(rows);
        report(1, worst <= 0.02 && elapsed < 1.0,
               fmt("pamp reference column reproduced, max deviation %.3f%% (tol 2%%), %.3fs",
                   100.0 * worst, elapsed));
    }

    // 2. deterministic model anchor, abc reference column
    {
        const auto rows = derive_vs_published(ref::abc_params(), nameplate, ref::published_abc);
        const double worst = max_rel_dev(rows);
        report(2, worst <= 0.02,
               fmt("abc reference column reproduced, max deviation %.3f%% (tol 2%%)",
                   100.0 * worst));
    }

    // 3. end-to-end abc estimation at the published protocol
    EstimationReport best_report;
    bool have_report = false;
    {
        const auto t0 = clock_type::now();
        RunSettings settings;  // population 120, 100 iterations, limit 10, phi 0.5,
                               // 10 restarts, base seed 42
        bool ok = false;
        std::string detail;
        try {
            best_report = estimate(nameplate, Method::abc, SearchBounds{}, settings);
            have_report = true;
            const double elapsed = seconds_since(t0);
            double worst_err = 0.0;
            for (const QuantityRow& row : best_report.quantities)
                worst_err = std::max(worst_err, row.error_pct);
            const bool feasible = check_constraints(best_report.params, nameplate).all();
            ok = feasible && worst_err <= 5.0 && best_report.cost <= 2e-3 && elapsed < 60.0;
            detail = fmt("cost %.3e (gate 2e-3), worst quantity error %.2f%% (gate 5%%), "
                         "feasible %s, %.1fs (gate 60s)",
                         best_report.cost, worst_err, feasible ? "yes" : "no", elapsed);
        } catch (const std::exception& e) {
            detail = std::string("estimation failed: ") + e.what();
        }
        report(3, ok, detail);
    }

    // 4. convergence shape of the winning trace
    {
        bool ok = false;
        std::string detail = "no report available";
        if (have_report) {
            const auto& trace = best_report.trace.best_cost_per_iteration;
            bool monotone = true;
            for (std::size_t i = 1; i < trace.size(); ++i)
                monotone = monotone && trace[i] <= trace[i - 1];
            const double first = trace.front();
            const double final = trace.back();
            const double at30 = trace[29];
            const double total_drop = first - final;
            const double fraction =
                total_drop > 0.0 ? (first - at30) / total_drop : 1.0;
            // "flat after iteration 30" on the linear axis: at least 90% of
            // the initial-to-final descent is done by then. The literal
            // value ratio is printed alongside for transparency.
            ok = monotone && fraction >= 0.9;
            detail = fmt("trace monotone %s, %.2f%% of total descent by iter 30 (gate 90%%), "
                         "value ratio at iter 30 = %.2fx final",
                         monotone ? "yes" : "no", 100.0 * fraction,
                         final > 0 ? at30 / final : 1.0);
        }
        report(4, ok, detail);
    }

    // 5. every reported solution across 100 seeds satisfies the constraints
    {
        RunSettings light;
        light.population = 40;
        light.iterations = 25;
        light.restarts = 1;
        int feasible_count = 0;
        int produced = 0;
        for (int k = 0; k < 100; ++k) {
            light.base_seed = 5000 + static_cast<std::uint64_t>(k);
            try {
                const EstimationReport rep =
                    estimate(nameplate, Method::abc, SearchBounds{}, light);
                ++produced;
                const ConstraintReport c = check_constraints(rep.params, nameplate);
                const CostBreakdown b = cost(rep.params, nameplate);
                if (c.all() && c.positive && b.feasible && std::abs(b.f3) <= 0.2 &&
                    rep.params.r_2 > rep.params.r_1 && rep.params.x_1d > rep.params.x_2d)
                    ++feasible_count;
            } catch (const NoFeasibleSolution&) {
                // counts against the criterion: a seed yielded no report
            }
        }
        report(5, feasible_count == 100,
               fmt("%d/100 seeds produced reports, %d/100 fully constraint-satisfying",
                   produced, feasible_count));
    }

    // 6. peak search against a one-million-point grid oracle
    {
        std::mt19937_64 rng(6001);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const CircuitParams p = random_feasible_params(rng);
            const MaxTorque fast = find_max_torque(p, nameplate);
            double grid_best = 0.0;
            constexpr int grid = 1000000;
            for (int j = 1; j <= grid; ++j)
                grid_best =
                    std::max(grid_best, oracle_torque(p, nameplate, static_cast<double>(j) / grid));
            worst = std::max(worst, std::abs(fast.t_max - grid_best) / grid_best);
        }
        report(6, worst <= 1e-4,
               fmt("50 random parameter sets, worst peak disagreement %.2e (tol 1e-4)", worst));
    }

    // 7. property suite
    {
        bool ok = true;
        std::string failure;
        std::mt19937_64 rng(7001);

        // Kirchhoff node balance and the air-gap identity
        for (int trial = 0; trial < 200 && ok; ++trial) {
            const CircuitParams p = random_feasible_params(rng);
            const double slip = std::uniform_real_distribution<double>(1e-4, 1.0)(rng);
            const SteadyState ss = steady_state(p, nameplate, slip);
            const complexd i_mag = ss.z_parallel * ss.i_stator * magnetizing_admittance(p.x_m);
            if (std::abs(ss.i_cage1 + ss.i_cage2 + i_mag - ss.i_stator) >
                1e-9 * std::abs(ss.i_stator)) {
                ok = false;
                failure = "kirchhoff balance";
            }
            const double k = 3.0 * nameplate.pole_pairs / nameplate.electrical_speed();
            const double airgap = k * ss.z_parallel.real() * std::norm(ss.i_stator);
            if (std::abs(ss.torque - airgap) > 1e-9 * std::abs(airgap)) {
                ok = false;
                failure = "air-gap identity";
            }
        }
        // symmetric cages
        for (int trial = 0; trial < 100 && ok; ++trial) {
            CircuitParams p = random_feasible_params(rng);
            p.r_2 = p.r_1;
            p.x_2d = p.x_1d;
            const double slip = std::uniform_real_distribution<double>(1e-4, 1.0)(rng);
            const SteadyState ss = steady_state(p, nameplate, slip);
            if (std::abs(std::abs(ss.i_cage1) - std::abs(ss.i_cage2)) >
                1e-12 * std::abs(ss.i_cage1)) {
                ok = false;
                failure = "symmetric cage currents";
            }
        }
        // fitness / probability algebra
        if (ok) {
            std::vector<double> fit(120);
            for (double& f : fit)
                f = std::uniform_real_distribution<double>(1e-6, 2.0)(rng);
            const auto probs = selection_probabilities(std::span<const double>{fit});
            double sum = 0.0;
            for (double v : probs)
                sum += v;
            if (std::abs(sum - 1.0) > 1e-12) {
                ok = false;
                failure = "probability normalization";
            }
            const std::vector<double> equal(77, 0.4);
            for (double v : selection_probabilities(std::span<const double>{equal}))
                if (std::abs(v - 1.0 / 77.0) > 1e-12) {
                    ok = false;
                    failure = "uniformity for equal fitness";
                }
        }
        // bound preservation of every evaluated candidate
        if (ok) {
            const Bounds box(7, Interval{-3.0, 3.0});
            std::mutex mu;
            bool inside = true;
            auto recording = [&](const std::vector<double>& x) {
                std::scoped_lock lock(mu);
                for (std::size_t d = 0; d < box.size(); ++d)
                    inside = inside && x[d] >= box[d].lo && x[d] <= box[d].hi;
                return sphere(x);
            };
            AbcConfig cfg;
            cfg.colony_size = 30;
            cfg.max_iterations = 30;
            cfg.rng_seed = 321;
            abc_minimize(recording, box, cfg);
            if (!inside) {
                ok = false;
                failure = "bound preservation";
            }
        }
        // determinism under varying worker counts
        if (ok) {
            auto motor_objective = [&nameplate](const std::vector<double>& x) {
                return penalized_cost(CircuitParams::from_array(x), nameplate);
            };
            AbcConfig cfg;
            cfg.colony_size = 24;
            cfg.max_iterations = 15;
            cfg.rng_seed = 20240521;
            const auto one = abc_minimize(motor_objective, SearchBounds{}.to_bounds(), cfg);
            for (int workers : {2, 4}) {
                cfg.workers = workers;
                const auto many = abc_minimize(motor_objective, SearchBounds{}.to_bounds(), cfg);
                if (many.best_value != one.best_value ||
                    many.best_position != one.best_position ||
                    many.trace.best_cost_per_iteration != one.trace.best_cost_per_iteration) {
                    ok = false;
                    failure = fmt("determinism with %d workers", workers);
                }
            }
        }
        report(7, ok,
               ok ? "kirchhoff 1e-9, air-gap 1e-9, symmetric cages 1e-12, selection algebra, "
                    "bound preservation, worker-count determinism"
                  : "property failed: " + failure);
    }

    // 8. sphere smoke gates for all three optimizers
    {
        const Bounds box(7, Interval{-5.0, 5.0});
        double abc_best = 1e300, pso_best = 1e300, ga_best = 1e300;
        for (std::uint64_t seed : {1, 2, 3}) {
            AbcConfig a;
            a.rng_seed = seed;
            abc_best = std::min(abc_best, abc_minimize(sphere, box, a).best_value);
            PsoConfig p;
            p.rng_seed = seed;
            pso_best = std::min(pso_best, pso_minimize(sphere, box, p).best_value);
            GaConfig g;
            g.rng_seed = seed;
            ga_best = std::min(ga_best, ga_minimize(sphere, box, g).best_value);
        }
        const bool ok = abc_best <= 1e-6 && pso_best <= 1e-4 && ga_best <= 1e-2;
        report(8, ok,
               fmt("sphere best-of-3: abc %.2e (gate 1e-6), pso %.2e (gate 1e-4), "
                   "ga %.2e (gate 1e-2)",
                   abc_best, pso_best, ga_best));
    }

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
