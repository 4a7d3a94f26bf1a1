#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dhstab/dh.hpp"
#include "dhstab/kvdoc.hpp"
#include "dhstab/mmio.hpp"
#include "dhstab/nearstab.hpp"
#include "dhstab/project.hpp"
#include "dhstab/region.hpp"
#include "dhstab/regionspec.hpp"
#include "dhstab/report.hpp"
#include "dhstab/svgplot.hpp"
#include "dhstab/textio.hpp"

namespace dhstab {

/// Exit codes shared by all commands.
enum ExitCode : int {
    exit_ok = 0,
    exit_unstable = 1,
    exit_input_error = 2,
    exit_solver_failure = 3,
};

/// "xmin:xmax:ymin:ymax"
inline Window parse_window(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos
                                                                      : colon - start));
        if (colon == std::string::npos)
            break;
        start = colon + 1;
    }
    if (parts.size() != 4)
        throw ParseError("window: expected xmin:xmax:ymin:ymax, got '" + text + "'", 0);
    Window w{parse_double_token(parts[0], 0), parse_double_token(parts[1], 0),
             parse_double_token(parts[2], 0), parse_double_token(parts[3], 0)};
    if (!(w.xmin < w.xmax) || !(w.ymin < w.ymax))
        throw ValidationError("window: need xmin < xmax and ymin < ymax in '" + text + "'");
    return w;
}

/// Parameter names accepted by each catalog kind, for `regions list`.
inline std::vector<std::string> kind_param_names(RegionKind k) {
    switch (k) {
    case RegionKind::left_conic_sector:
    case RegionKind::right_conic_sector: return {"a", "theta"};
    case RegionKind::disk: return {"q", "r"};
    case RegionKind::vertical_strip: return {"h", "k"};
    case RegionKind::left_half_plane: return {"k"};
    case RegionKind::right_half_plane: return {"h"};
    case RegionKind::ellipse: return {"q", "a", "b"};
    case RegionKind::left_parabola:
    case RegionKind::right_parabola: return {"q", "c"};
    case RegionKind::left_hyperbola:
    case RegionKind::right_hyperbola: return {"a", "b"};
    case RegionKind::horizontal_strip: return {"w"};
    default: return {};
    }
}

struct RegionsOptions {
    std::string action; // list | eval | raster
    std::string region_path;
    std::string point;             // eval
    std::string window = "-6:6:-6:6";
    int resolution = 201;
    std::string out_path; // raster csv; empty writes to the stream
};

inline int cmd_regions(const RegionsOptions& opt, std::ostream& out) {
    if (opt.action == "list") {
        for (RegionKind k : catalog_kinds()) {
            out << kind_name(k);
            for (const std::string& p : kind_param_names(k))
                out << " " << p;
            out << "\n";
        }
        out << "hurwitz\n";
        return exit_ok;
    }
    if (opt.action == "eval") {
        Region region = parse_region_file(opt.region_path);
        const cdouble z = parse_complex_literal(opt.point);
        const double margin = membership_margin(region, z);
        out << "point " << format_complex(z) << "\n";
        out << "margin " << format_double(margin) << "\n";
        out << "verdict " << (margin < 0.0 ? "inside" : "outside") << "\n";
        return margin < 0.0 ? exit_ok : exit_unstable;
    }
    if (opt.action == "raster") {
        Region region = parse_region_file(opt.region_path);
        const Window w = parse_window(opt.window);
        Raster r = raster(region, w, opt.resolution, opt.resolution);
        const std::string csv = raster_csv(r);
        if (opt.out_path.empty())
            out << csv;
        else
            write_text_file(opt.out_path, csv);
        return exit_ok;
    }
    throw ValidationError("regions: unknown action '" + opt.action +
                          "' (expected list, eval or raster)");
}

struct CheckOptions {
    std::string matrix_path;
    std::string region_path;
    bool certificate = false;
    std::string report_path;
};

inline int cmd_check(const CheckOptions& opt, std::ostream& out) {
    Matrix a = read_matrix_file(opt.matrix_path);
    Region region = parse_region_file(opt.region_path);
    StabilityVerdict v = is_stable_eig(region, a);
    for (std::size_t i = 0; i < v.eigenvalues.size(); ++i)
        out << "eigenvalue " << format_complex(v.eigenvalues[i]) << " margin "
            << format_double(v.margins[i]) << "\n";
    out << "worst_margin " << format_double(v.worst_margin) << "\n";
    out << "verdict " << (v.stable ? "stable" : "unstable") << "\n";

    RunReport report;
    report.command = "check";
    report.inputs = {{"matrix", opt.matrix_path}, {"region", opt.region_path}};
    report.stability_margin = v.worst_margin;
    report.status = v.stable ? "stable" : "unstable";

    if (opt.certificate) {
        CertifyReport cert = certify_stability(region, a);
        out << "certificate " << certify_status_name(cert.status);
        if (cert.status == CertifyStatus::certified) {
            out << " delta " << format_double(cert.certificate->delta);
            report.config.emplace_back("certificate_delta",
                                       format_double(cert.certificate->delta));
        }
        out << "\n";
        report.config.emplace_back("certificate", certify_status_name(cert.status));
        report.iterations = cert.iterations;
    }
    if (!opt.report_path.empty())
        write_text_file(opt.report_path, write_report(report));
    return v.stable ? exit_ok : exit_unstable;
}

struct GenOptions {
    std::string region_path;
    std::string out_path;
    std::string report_path; // defaults next to out_path
    int n = 10;
    double eps_noise = 1.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string strip_matrix_ext(const std::string& path) {
    for (const char* ext : {".mtx", ".csv"}) {
        const std::size_t len = std::string(ext).size();
        if (path.size() > len && lower(path.substr(path.size() - len)) == ext)
            return path.substr(0, path.size() - len);
    }
    return path;
}

} // namespace detail

inline int cmd_gen(const GenOptions& opt, std::ostream& out) {
    Region region = parse_region_file(opt.region_path);
    Instance inst = gen_instance(region, opt.n, opt.eps_noise, opt.seed);
    write_matrix_file(opt.out_path, inst.A);

    const std::string base = detail::strip_matrix_ext(opt.out_path);
    RunReport meta;
    meta.command = "gen";
    meta.inputs = {{"region", opt.region_path}};
    meta.config = {{"n", std::to_string(opt.n)},
                   {"eps_noise", format_double(opt.eps_noise)},
                   {"seed", std::to_string(opt.seed)}};
    meta.artifacts.emplace_back("matrix", opt.out_path);
    const char* names[3] = {"J", "R", "P"};
    const Matrix* parts[3] = {&inst.ground_truth->J, &inst.ground_truth->R,
                              &inst.ground_truth->P};
    for (int i = 0; i < 3; ++i) {
        const std::string path = base + "." + names[i] + ".mtx";
        write_matrix_file(path, *parts[i]);
        meta.artifacts.emplace_back(std::string("ground_truth_") + names[i], path);
    }
    const std::string meta_path = opt.report_path.empty() ? base + ".meta" : opt.report_path;
    write_text_file(meta_path, write_report(meta));
    out << "matrix " << opt.out_path << "\n";
    out << "metadata " << meta_path << "\n";
    return exit_ok;
}

struct NearestOptions {
    std::string matrix_path;
    std::string region_path;
    std::string out_path;
    std::string report_path;
    std::string plot_path; // optional eigenvalue scatter
    std::string window = "-6:6:-6:6";
    int resolution = 201;
    NearStabConfig config;
};

inline int cmd_nearest(const NearestOptions& opt, std::ostream& out) {
    Matrix a = read_matrix_file(opt.matrix_path);
    Region region = parse_region_file(opt.region_path);

    RunReport report;
    report.command = "nearest";
    report.inputs = {{"matrix", opt.matrix_path}, {"region", opt.region_path}};
    report.config = {
        {"max_outer_iterations", std::to_string(opt.config.max_outer_iterations)},
        {"rel_improvement_tol", format_double(opt.config.rel_improvement_tol)},
        {"eps", format_double(opt.config.eps)},
    };
    if (opt.config.delta)
        report.config.emplace_back("delta", format_double(*opt.config.delta));

    NearStabResult res;
    try {
        res = solve_nearest(a, region, opt.config);
    } catch (const Error& e) {
        report.status = e.what();
        if (!opt.report_path.empty())
            write_text_file(opt.report_path, write_report(report));
        throw;
    }

    write_matrix_file(opt.out_path, res.A_tilde);
    report.artifacts.emplace_back("matrix", opt.out_path);
    report.relative_error = res.relative_error;
    report.stability_margin = res.stability_margin;
    report.iterations = res.iterations;
    report.wall_time = res.wall_time;
    report.objective_trajectory = res.objective_trajectory;

    if (!opt.plot_path.empty()) {
        const Window w = parse_window(opt.window);
        Raster r = raster(region, w, opt.resolution, opt.resolution);
        std::vector<PlotSeries> series{
            {opt.matrix_path, general_eig(a).values},
            {opt.out_path, general_eig(res.A_tilde).values},
        };
        write_text_file(opt.plot_path, render_eig_svg(r, series, w));
        report.artifacts.emplace_back("plot", opt.plot_path);
    }
    if (!opt.report_path.empty())
        write_text_file(opt.report_path, write_report(report));

    out << "relative_error " << format_double(res.relative_error) << "\n";
    out << "stability_margin " << format_double(res.stability_margin) << "\n";
    out << "iterations " << res.iterations << "\n";
    out << "wall_time " << format_double(res.wall_time) << "\n";
    out << "output " << opt.out_path << "\n";
    return exit_ok;
}

struct PlotOptions {
    std::vector<std::string> matrix_paths;
    std::string region_path;
    std::string out_path;
    std::string csv_prefix; // optional eigenvalue/raster CSV dumps
    std::string window = "-6:6:-6:6";
    int resolution = 201;
};

inline int cmd_plot(const PlotOptions& opt, std::ostream& out) {
    Region region = parse_region_file(opt.region_path);
    const Window w = parse_window(opt.window);
    Raster r = raster(region, w, opt.resolution, opt.resolution);
    std::vector<PlotSeries> series;
    for (const std::string& path : opt.matrix_paths)
        series.push_back({path, general_eig(read_matrix_file(path)).values});
    write_text_file(opt.out_path, render_eig_svg(r, series, w));
    out << "plot " << opt.out_path << "\n";
    if (!opt.csv_prefix.empty()) {
        write_text_file(opt.csv_prefix + "-eigs.csv", eigs_csv(series));
        write_text_file(opt.csv_prefix + "-raster.csv", raster_csv(r));
        out << "csv " << opt.csv_prefix << "-eigs.csv " << opt.csv_prefix << "-raster.csv\n";
    }
    return exit_ok;
}

/// Maps library errors to the documented exit codes; prints the message.
template <typename Fn>
inline int run_command(Fn&& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (offset " << e.position << ")\n";
        return exit_input_error;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const ModeError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << "\n";
        return exit_solver_failure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_solver_failure;
    }
}

} // namespace dhstab
