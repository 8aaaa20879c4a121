#pragma once

// Command implementations behind the command-line tool. Kept free of any
// argument-parsing dependency so they are directly testable; the binary in
// tools/ only maps flags onto these structs.
//
// Exit codes: 0 success, 1 input error, 2 no feasible solution.

#include <filesystem>
#include <iomanip>
#include <iostream>

#include "io.hpp"

namespace dcim::cli {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_infeasible = 2;

constexpr int default_curve_points = 1000;

struct CommonArgs {
    std::string nameplate_path;
    std::uint64_t seed = 42;
    int restarts = 10;
    int iters = 100;
    int colony = 120;
    int limit = 10;
    double phi_max = 0.5;
    std::string bounds_path;  // optional
    std::string out_dir = "./out";
};

struct EstimateArgs : CommonArgs {
    std::string method = "abc";
};

struct CompareArgs : CommonArgs {
    std::vector<std::string> methods{"abc", "pso", "ga"};
    std::string reference_path;  // optional
};

struct CurvesArgs {
    std::string params_path;
    std::string nameplate_path;
    int points = default_curve_points;
    std::string out_dir = "./out";
};

namespace detail {

inline RunSettings settings_from(const CommonArgs& a) {
    RunSettings s;
    s.population = a.colony;
    s.iterations = a.iters;
    s.limit = a.limit;
    s.phi_max = a.phi_max;
    s.base_seed = a.seed;
    s.restarts = a.restarts;
    return s;
}

inline SearchBounds bounds_from(const CommonArgs& a) {
    if (a.bounds_path.empty())
        return SearchBounds{};
    return io::read_bounds_csv_file(a.bounds_path);
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    writer(out);
}

inline void write_curve_files(const std::filesystem::path& dir, const std::string& suffix,
                              const CurveSet& curves) {
    write_file(dir / ("torque_curve" + suffix + ".csv"),
               [&](std::ostream& o) { io::write_curve_csv(o, "torque", curves.torque); });
    write_file(dir / ("current_curve" + suffix + ".csv"),
               [&](std::ostream& o) { io::write_curve_csv(o, "current", curves.current); });
    write_file(dir / "anchors.csv",
               [&](std::ostream& o) { io::write_anchors_csv(o, curves.anchors); });
}

inline void print_quantity_table(std::ostream& out, const QuantityTable& table) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::left << std::setw(8) << "quantity" << std::right << std::setw(14)
        << "manufacturer" << std::setw(14) << "calculated" << std::setw(12) << "error %"
        << '\n'
        << std::fixed;
    for (const QuantityRow& row : table)
        out << std::left << std::setw(8) << row.quantity << std::right
            << std::setprecision(4) << std::setw(14) << row.manufacturer << std::setw(14)
            << row.calculated << std::setprecision(2) << std::setw(12) << row.error_pct
            << '\n';
    out.flags(flags);
    out.precision(precision);
}

}  // namespace detail

inline int run_estimate(const EstimateArgs& args, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
    try {
        const auto method = method_from_name(args.method);
        if (!method) {
            err << "error: unknown method '" << args.method << "' (expected abc, pso or ga)\n";
            return exit_input_error;
        }
        const Nameplate nameplate = io::read_nameplate_file(args.nameplate_path);
        const SearchBounds bounds = detail::bounds_from(args);
        const RunSettings settings = detail::settings_from(args);

        EstimationReport report;
        try {
            report = estimate(nameplate, *method, bounds, settings);
        } catch (const NoFeasibleSolution& e) {
            err << "error: " << e.what() << '\n';
            return exit_infeasible;
        }

        const std::filesystem::path dir(args.out_dir);
        std::filesystem::create_directories(dir);
        detail::write_file(dir / "params.csv",
                           [&](std::ostream& o) { io::write_params_csv(o, report.params); });
        detail::write_file(dir / "report.csv",
                           [&](std::ostream& o) { io::write_report_csv(o, report.quantities); });
        detail::write_file(dir / "trace.csv",
                           [&](std::ostream& o) { io::write_trace_csv(o, report.trace); });
        detail::write_curve_files(dir, "",
                                  emit_curves(report, nameplate, default_curve_points));

        out << "method: " << report.method << "   winning seed: " << report.winning_seed
            << " (best of " << settings.restarts << ")   cost: " << io::format_double(report.cost)
            << "\n\n";
        detail::print_quantity_table(out, report.quantities);
        out << "\nartifacts written to " << dir.string() << '\n';
        return exit_ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}

inline int run_compare(const CompareArgs& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    try {
        std::vector<Method> methods;
        for (const std::string& name : args.methods) {
            const auto m = method_from_name(name);
            if (!m) {
                err << "error: unknown method '" << name << "' (expected abc, pso or ga)\n";
                return exit_input_error;
            }
            methods.push_back(*m);
        }
        const Nameplate nameplate = io::read_nameplate_file(args.nameplate_path);
        const SearchBounds bounds = detail::bounds_from(args);
        const RunSettings settings = detail::settings_from(args);
        std::optional<CircuitParams> reference;
        if (!args.reference_path.empty())
            reference = io::read_params_csv_file(args.reference_path);

        const Comparison cmp = compare_methods(nameplate, methods, reference, bounds, settings);

        const std::filesystem::path dir(args.out_dir);
        std::filesystem::create_directories(dir);

        // params_table.csv: one column per successful method, plus reference
        detail::write_file(dir / "params_table.csv", [&](std::ostream& o) {
            o << "name";
            for (const MethodOutcome& mo : cmp.methods)
                if (mo.report)
                    o << ',' << mo.method;
            if (cmp.reference)
                o << ",reference";
            o << '\n';
            const auto names = CircuitParams::names();
            for (std::size_t i = 0; i < CircuitParams::count; ++i) {
                o << names[i];
                for (const MethodOutcome& mo : cmp.methods)
                    if (mo.report)
                        o << ',' << io::format_double(mo.report->params.to_array()[i]);
                if (cmp.reference)
                    o << ',' << io::format_double(cmp.reference->params.to_array()[i]);
                o << '\n';
            }
        });

        detail::write_file(dir / "quantities_table.csv", [&](std::ostream& o) {
            o << "quantity,manufacturer";
            for (const MethodOutcome& mo : cmp.methods)
                if (mo.report)
                    o << ',' << mo.method << "_calculated," << mo.method << "_error_pct";
            if (cmp.reference)
                o << ",reference_calculated,reference_error_pct";
            o << '\n';
            for (std::size_t q = 0; q < 6; ++q) {
                const QuantityRow* any = nullptr;
                for (const MethodOutcome& mo : cmp.methods)
                    if (mo.report)
                        any = &mo.report->quantities[q];
                if (cmp.reference)
                    any = &cmp.reference->quantities[q];
                if (!any)
                    continue;
                o << any->quantity << ',' << io::format_double(any->manufacturer);
                for (const MethodOutcome& mo : cmp.methods)
                    if (mo.report)
                        o << ',' << io::format_double(mo.report->quantities[q].calculated) << ','
                          << io::format_double(mo.report->quantities[q].error_pct);
                if (cmp.reference)
                    o << ',' << io::format_double(cmp.reference->quantities[q].calculated) << ','
                      << io::format_double(cmp.reference->quantities[q].error_pct);
                o << '\n';
            }
        });

        detail::write_file(dir / "traces.csv", [&](std::ostream& o) {
            o << "iteration";
            std::size_t rows = 0;
            for (const MethodOutcome& mo : cmp.methods)
                if (mo.report) {
                    o << ',' << mo.method;
                    rows = std::max(rows, mo.report->trace.best_cost_per_iteration.size());
                }
            o << '\n';
            for (std::size_t i = 0; i < rows; ++i) {
                o << (i + 1);
                for (const MethodOutcome& mo : cmp.methods) {
                    if (!mo.report)
                        continue;
                    const auto& t = mo.report->trace.best_cost_per_iteration;
                    o << ',';
                    if (i < t.size())
                        o << io::format_double(t[i]);
                }
                o << '\n';
            }
        });

        for (const MethodOutcome& mo : cmp.methods)
            if (mo.report)
                detail::write_curve_files(
                    dir, "_" + mo.method,
                    emit_curves(*mo.report, nameplate, default_curve_points));
        if (cmp.reference)
            detail::write_curve_files(
                dir, "_reference",
                emit_curves(cmp.reference->params, nameplate, default_curve_points));

        bool any_ok = false;
        for (const MethodOutcome& mo : cmp.methods) {
            if (mo.report) {
                any_ok = true;
                out << mo.method << ": cost " << io::format_double(mo.report->cost)
                    << " (winning seed " << mo.report->winning_seed << ")\n";
                detail::print_quantity_table(out, mo.report->quantities);
                out << '\n';
            } else {
                out << mo.method << ": failed — " << mo.error << " (columns omitted)\n\n";
            }
        }
        if (cmp.reference) {
            out << "reference:\n";
            detail::print_quantity_table(out, cmp.reference->quantities);
            out << '\n';
        }
        // expected ordering note (annotation only, never an exit condition)
        const MethodOutcome* abc_outcome = nullptr;
        for (const MethodOutcome& mo : cmp.methods)
            if (mo.method == "abc" && mo.report)
                abc_outcome = &mo;
        if (abc_outcome) {
            for (const MethodOutcome& mo : cmp.methods) {
                if (&mo == abc_outcome || !mo.report)
                    continue;
                if (abc_outcome->report->cost > mo.report->cost)
                    out << "note: " << mo.method << " beat abc on final cost this run; "
                        << "abc is usually ahead on this problem\n";
            }
        }
        out << "artifacts written to " << dir.string() << '\n';
        return any_ok ? exit_ok : exit_infeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}

inline int run_curves(const CurvesArgs& args, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    try {
        const Nameplate nameplate = io::read_nameplate_file(args.nameplate_path);
        const CircuitParams params = io::read_params_csv_file(args.params_path);
        if (args.points < 2) {
            err << "error: --points must be at least 2\n";
            return exit_input_error;
        }
        const std::filesystem::path dir(args.out_dir);
        std::filesystem::create_directories(dir);
        detail::write_curve_files(dir, "", emit_curves(params, nameplate, args.points));
        out << "curves written to " << dir.string() << '\n';
        return exit_ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}

}  // namespace dcim::cli
