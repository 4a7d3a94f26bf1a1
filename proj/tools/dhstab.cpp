#include <iostream>

#include "CLI11.hpp"
#include "dhstab/cli.hpp"

int main(int argc, char** argv) {
    using namespace dhstab;

    CLI::App app{"dissipative-Hamiltonian tools for LMI-region stability"};
    app.require_subcommand(1);

    RegionsOptions regions_opt;
    CLI::App* regions = app.add_subcommand("regions", "inspect region specifications");
    regions->add_option("action", regions_opt.action, "list, eval or raster")->required();
    regions->add_option("--region", regions_opt.region_path, "region spec file");
    regions->add_option("--point", regions_opt.point, "complex point, e.g. -1+0.5i");
    regions->add_option("--window", regions_opt.window, "xmin:xmax:ymin:ymax");
    regions->add_option("--resolution", regions_opt.resolution, "raster nodes per axis");
    regions->add_option("--out", regions_opt.out_path, "raster CSV output path");

    CheckOptions check_opt;
    CLI::App* check = app.add_subcommand("check", "eigenvalue stability verdict for a matrix");
    check->add_option("--matrix", check_opt.matrix_path, "matrix file")->required();
    check->add_option("--region", check_opt.region_path, "region spec file")->required();
    check->add_flag("--certificate", check_opt.certificate, "also compute an LMI certificate");
    check->add_option("--report", check_opt.report_path, "write a report document here");

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--region", gen_opt.region_path, "region spec file")->required();
    gen->add_option("--out", gen_opt.out_path, "output matrix file")->required();
    gen->add_option("--report", gen_opt.report_path, "metadata document path");
    gen->add_option("--n", gen_opt.n, "matrix dimension");
    gen->add_option("--eps-noise", gen_opt.eps_noise, "noise-to-signal ratio");
    gen->add_option("--seed", gen_opt.seed, "random seed");

    NearestOptions near_opt;
    double near_delta = 0.0;
    CLI::App* nearest = app.add_subcommand("nearest", "nearest stable matrix");
    nearest->add_option("--matrix", near_opt.matrix_path, "matrix file")->required();
    nearest->add_option("--region", near_opt.region_path, "region spec file")->required();
    nearest->add_option("--out", near_opt.out_path, "output matrix file")->required();
    nearest->add_option("--report", near_opt.report_path, "write a report document here");
    nearest->add_option("--maxit", near_opt.config.max_outer_iterations, "outer iteration cap");
    nearest->add_option("--tol", near_opt.config.rel_improvement_tol,
                        "relative improvement stopping tolerance");
    CLI::Option* delta_flag =
        nearest->add_option("--delta", near_delta, "interior LMI margin (default scales with A)");
    nearest->add_option("--plot", near_opt.plot_path, "eigenvalue scatter SVG path");
    nearest->add_option("--window", near_opt.window, "plot window xmin:xmax:ymin:ymax");
    nearest->add_option("--resolution", near_opt.resolution, "plot raster nodes per axis");

    PlotOptions plot_opt;
    CLI::App* plot = app.add_subcommand("plot-eigs", "eigenvalue scatter over a region raster");
    plot->add_option("--matrix", plot_opt.matrix_paths, "matrix files (repeatable)");
    plot->add_option("--region", plot_opt.region_path, "region spec file")->required();
    plot->add_option("--out", plot_opt.out_path, "SVG output path")->required();
    plot->add_option("--csv", plot_opt.csv_prefix, "also dump <prefix>-eigs.csv and <prefix>-raster.csv");
    plot->add_option("--window", plot_opt.window, "xmin:xmax:ymin:ymax");
    plot->add_option("--resolution", plot_opt.resolution, "raster nodes per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    return run_command(
        [&]() -> int {
            if (regions->parsed())
                return cmd_regions(regions_opt, std::cout);
            if (check->parsed())
                return cmd_check(check_opt, std::cout);
            if (gen->parsed())
                return cmd_gen(gen_opt, std::cout);
            if (nearest->parsed()) {
                if (*delta_flag)
                    near_opt.config.delta = near_delta;
                return cmd_nearest(near_opt, std::cout);
            }
            return cmd_plot(plot_opt, std::cout);
        },
        std::cerr);
}
