// Command-line front end: estimate | compare | curves.

#include <CLI11.hpp>

#include "dcim/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Double-cage induction motor parameter estimation from nameplate data"};
    app.require_subcommand(1);

    dcim::cli::EstimateArgs est;
    CLI::App* cmd_est = app.add_subcommand(
        "estimate", "Fit the seven circuit parameters to a nameplate file");
    cmd_est->add_option("--nameplate", est.nameplate_path, "nameplate key-value file")
        ->required();
    cmd_est->add_option("--method", est.method, "abc, pso or ga")->default_val("abc");
    cmd_est->add_option("--seed", est.seed, "base RNG seed")->default_val(42);
    cmd_est->add_option("--restarts", est.restarts, "independent seeded runs")->default_val(10);
    cmd_est->add_option("--iters", est.iters, "iterations per run")->default_val(100);
    cmd_est->add_option("--colony", est.colony, "population / colony size")->default_val(120);
    cmd_est->add_option("--limit", est.limit, "abc rescue threshold")->default_val(10);
    cmd_est->add_option("--phi-max", est.phi_max, "abc step amplitude")->default_val(0.5);
    cmd_est->add_option("--bounds", est.bounds_path, "search bounds CSV (name,lo,hi)");
    cmd_est->add_option("--out", est.out_dir, "output directory")->default_val("./out");

    dcim::cli::CompareArgs cmp;
    std::string methods_csv = "abc,pso,ga";
    CLI::App* cmd_cmp = app.add_subcommand(
        "compare", "Run several methods side by side and emit comparison tables");
    cmd_cmp->add_option("--nameplate", cmp.nameplate_path, "nameplate key-value file")
        ->required();
    cmd_cmp->add_option("--methods", methods_csv, "comma-separated list from abc,pso,ga")
        ->default_val("abc,pso,ga");
    cmd_cmp->add_option("--reference", cmp.reference_path,
                        "params CSV used as a deterministic reference column");
    cmd_cmp->add_option("--seed", cmp.seed, "base RNG seed")->default_val(42);
    cmd_cmp->add_option("--restarts", cmp.restarts, "independent seeded runs")->default_val(10);
    cmd_cmp->add_option("--iters", cmp.iters, "iterations per run")->default_val(100);
    cmd_cmp->add_option("--colony", cmp.colony, "population / colony size")->default_val(120);
    cmd_cmp->add_option("--limit", cmp.limit, "abc rescue threshold")->default_val(10);
    cmd_cmp->add_option("--phi-max", cmp.phi_max, "abc step amplitude")->default_val(0.5);
    cmd_cmp->add_option("--bounds", cmp.bounds_path, "search bounds CSV (name,lo,hi)");
    cmd_cmp->add_option("--out", cmp.out_dir, "output directory")->default_val("./out");

    dcim::cli::CurvesArgs crv;
    CLI::App* cmd_crv = app.add_subcommand(
        "curves", "Emit torque/current curves for a fixed parameter file");
    cmd_crv->add_option("--params", crv.params_path, "params CSV (name,value)")->required();
    cmd_crv->add_option("--nameplate", crv.nameplate_path, "nameplate key-value file")
        ->required();
    cmd_crv->add_option("--points", crv.points, "samples per curve")->default_val(1000);
    cmd_crv->add_option("--out", crv.out_dir, "output directory")->default_val("./out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dcim::cli::exit_input_error;
    }

    if (cmd_est->parsed())
        return dcim::cli::run_estimate(est);
    if (cmd_cmp->parsed()) {
        cmp.methods.clear();
        std::stringstream ss(methods_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                cmp.methods.push_back(item);
        return dcim::cli::run_compare(cmp);
    }
    return dcim::cli::run_curves(crv);
}
