// Command line front end: solve the period problem, build and export meshes, run the
// verification suite, and sweep the parameter domain.
//
// Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 numerical failure.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "minsurf/io.hpp"
#include "minsurf/period.hpp"
#include "minsurf/verify.hpp"

using namespace minsurf;

namespace {

void apply_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "read options from a key = value file");
    cmd->add_option("--family", cfg.family, "surface family: C2, L2 or L4");
    cmd->add_option("--x-re", cfg.x_re, "Re x of the shape parameter");
    cmd->add_option("--x-im", cfg.x_im, "Im x of the shape parameter");
    cmd->add_option("--slice-fixed", cfg.slice_fixed, "fixed component of the solve slice");
    cmd->add_option("--slice-lo", cfg.slice_lo, "sweep range lower end");
    cmd->add_option("--slice-hi", cfg.slice_hi, "sweep range upper end");
    cmd->add_option("--slice-samples", cfg.slice_samples, "residual samples along the slice");
    cmd->add_option("--resolution", cfg.resolution, "grid resolution N");
    cmd->add_option("--tiles", cfg.tiles, "tile counts n1 n2 n3");
    cmd->add_option("--tol-period", cfg.tol_period, "period residual tolerance");
    cmd->add_option("--clearance", cfg.clearance, "branch point clearance");
    cmd->add_option("--output-dir", cfg.output_dir, "output directory");
    cmd->add_option("--sweep-re-lo", cfg.sweep_re_lo, "sweep Re X lower bound");
    cmd->add_option("--sweep-re-hi", cfg.sweep_re_hi, "sweep Re X upper bound");
    cmd->add_option("--sweep-im-lo", cfg.sweep_im_lo, "sweep Im X lower bound");
    cmd->add_option("--sweep-im-hi", cfg.sweep_im_hi, "sweep Im X upper bound");
    cmd->add_option("--sweep-re-n", cfg.sweep_re_n, "sweep sample count in Re X");
    cmd->add_option("--sweep-im-n", cfg.sweep_im_n, "sweep sample count in Im X");
}

RunConfig merge_config(const RunConfig& flags, const std::string& config_path, CLI::App* cmd) {
    if (config_path.empty()) return flags;
    RunConfig cfg = RunConfig::parse_file(config_path);
    // command line flags win over the file
    RunConfig merged = cfg;
    if (cmd->count("--family")) merged.family = flags.family;
    if (cmd->count("--x-re")) merged.x_re = flags.x_re;
    if (cmd->count("--x-im")) merged.x_im = flags.x_im;
    if (cmd->count("--slice-fixed")) merged.slice_fixed = flags.slice_fixed;
    if (cmd->count("--slice-lo")) merged.slice_lo = flags.slice_lo;
    if (cmd->count("--slice-hi")) merged.slice_hi = flags.slice_hi;
    if (cmd->count("--slice-samples")) merged.slice_samples = flags.slice_samples;
    if (cmd->count("--resolution")) merged.resolution = flags.resolution;
    if (cmd->count("--tiles")) merged.tiles = flags.tiles;
    if (cmd->count("--tol-period")) merged.tol_period = flags.tol_period;
    if (cmd->count("--clearance")) merged.clearance = flags.clearance;
    if (cmd->count("--output-dir")) merged.output_dir = flags.output_dir;
    if (cmd->count("--sweep-re-lo")) merged.sweep_re_lo = flags.sweep_re_lo;
    if (cmd->count("--sweep-re-hi")) merged.sweep_re_hi = flags.sweep_re_hi;
    if (cmd->count("--sweep-im-lo")) merged.sweep_im_lo = flags.sweep_im_lo;
    if (cmd->count("--sweep-im-hi")) merged.sweep_im_hi = flags.sweep_im_hi;
    if (cmd->count("--sweep-re-n")) merged.sweep_re_n = flags.sweep_re_n;
    if (cmd->count("--sweep-im-n")) merged.sweep_im_n = flags.sweep_im_n;
    return merged;
}

SliceSpec slice_from_config(const RunConfig& cfg) {
    Family fam = family_from_name(cfg.family);
    SliceSpec s = SliceSpec::default_for(fam);
    if (!std::isnan(cfg.slice_fixed)) s.fixed = cfg.slice_fixed;
    if (cfg.slice_lo != 0 || cfg.slice_hi != 0) {
        s.lo = cfg.slice_lo;
        s.hi = cfg.slice_hi;
    }
    s.samples = cfg.slice_samples;
    return s;
}

int cmd_solve(const RunConfig& cfg) {
    SliceSpec slice = slice_from_config(cfg);
    try {
        SolveResult sol = solve_period(slice, cfg.tol_period);
        std::cout << "family    " << cfg.family << "\n"
                  << "x         " << sol.shape.x.real() << " + " << sol.shape.x.imag() << " i\n"
                  << "X         " << sol.derived.X.real() << " + " << sol.derived.X.imag() << " i\n"
                  << "A         " << sol.derived.A << "\n"
                  << "a         " << sol.derived.a << "\n"
                  << "c         " << sol.derived.c << "\n"
                  << "first     " << sol.report.first << "\n"
                  << "second    " << sol.report.second << "\n"
                  << "residual  " << sol.report.residual << "\n";
        if (!sol.report.note.empty()) std::cout << "note      " << sol.report.note << "\n";
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream out(cfg.output_dir + "/solve_" + cfg.family + ".txt");
        out << "sweep_location = " << sol.sweep_location << "\n"
            << "x_re = " << sol.shape.x.real() << "\nx_im = " << sol.shape.x.imag() << "\n"
            << "A = " << sol.derived.A << "\na = " << sol.derived.a << "\nc = " << sol.derived.c
            << "\nresidual = " << sol.report.residual << "\n";
        return 0;
    } catch (const BracketFailure& e) {
        std::cerr << "bracket failure: " << e.what() << "\n";
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream out(cfg.output_dir + "/residuals_" + cfg.family + ".csv");
        write_csv_header(out, {"sweep", "residual"});
        for (size_t i = 0; i < e.sweep_values.size(); ++i)
            write_csv_row(out, {e.sweep_values[i], e.residuals[i]});
        std::cerr << "residual table written to " << cfg.output_dir << "/residuals_" << cfg.family
                  << ".csv\n";
        return 3;
    }
}

int cmd_build(const RunConfig& cfg) {
    ShapeParams sp = cfg.shape();
    DerivedParams dp = derive_params(sp);
    PeriodReport rep = period_integrals(dp);
    if (std::abs(rep.residual) > cfg.tol_period)
        std::cerr << "warning: period residual " << rep.residual
                  << " above tolerance; building an open-period surface\n";

    std::filesystem::create_directories(cfg.output_dir);
    DomainGrid grid = sample_domain(dp, cfg.resolution, cfg.clearance);
    Mesh mesh = integrate_immersion(grid, dp);
    export_obj_file(mesh, cfg.output_dir + "/fundamental_domain.obj");

    PieceResult piece = assemble_fundamental_piece(mesh, dp);
    export_obj_file(piece.mesh, cfg.output_dir + "/fundamental_piece.obj");
    std::cout << "piece: " << piece.mesh.vertices.size() << " vertices, "
              << piece.boundary_circuits << " boundary circuits, period gap "
              << piece.period_gap.norm() << "\n";

    TileResult tiled = tile(piece, dp, cfg.tiles);
    export_obj_file(tiled.mesh, cfg.output_dir + "/tiled.obj");
    std::ofstream lat(cfg.output_dir + "/lattice.txt");
    for (const Vec3& v : tiled.lattice) lat << v.x << " " << v.y << " " << v.z << "\n";
    std::cout << "wrote fundamental_domain.obj, fundamental_piece.obj, tiled.obj, lattice.txt to "
              << cfg.output_dir << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    ShapeParams sp = cfg.shape();
    DerivedParams dp = derive_params(sp);

    VerificationReport all;
    auto absorb = [&all](const VerificationReport& r) {
        for (const auto& c : r.checks) all.checks.push_back(c);
    };

    absorb(check_boundary_loci(dp));
    DomainGrid grid = sample_domain(dp, cfg.resolution, cfg.clearance);
    Mesh mesh = integrate_immersion(grid, dp);
    absorb(check_period_closure(mesh, dp));
    auto branch_pts = domain_branch_points(dp);
    double far = dp.family == Family::L2 ? 2.0 : 1e300;  // the truncated chart of z = inf
    absorb(check_minimality(mesh, 10.0 * 64.0 / cfg.resolution * 0.01, branch_pts, far));
    PieceResult piece = assemble_fundamental_piece(mesh, dp);
    absorb(check_symmetries(piece.domain, {rho_h_motion(mesh)}));
    if (dp.family == Family::C2) absorb(check_embeddedness_conditions(dp));
    absorb(check_degree(dp, cplx{2.0, 1.0}));

    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream txt(cfg.output_dir + "/verify_" + cfg.family + ".txt");
    std::ofstream csv(cfg.output_dir + "/verify_" + cfg.family + ".csv");
    write_csv_header(csv, {"check", "passed", "residual", "tolerance"});
    for (const auto& c : all.checks) {
        std::string line = (c.passed ? "PASS  " : "FAIL  ") + c.id + "  residual " +
                           std::to_string(c.residual) + " tol " + std::to_string(c.tolerance) +
                           (c.detail.empty() ? "" : "  [" + c.detail + "]");
        std::cout << line << "\n";
        txt << line << "\n";
        csv << c.id << "," << (c.passed ? 1 : 0) << "," << c.residual << "," << c.tolerance << "\n";
    }
    std::cout << (all.passed() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    return all.passed() ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
    Family fam = family_from_name(cfg.family);
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream out(cfg.output_dir + "/sweep_" + cfg.family + ".csv");
    write_csv_header(out, {"re", "im", "first", "second", "residual", "admissible"});
    for (int i = 0; i < cfg.sweep_im_n; ++i) {
        double im = cfg.sweep_im_lo +
                    (cfg.sweep_im_hi - cfg.sweep_im_lo) * (cfg.sweep_im_n == 1 ? 0 : double(i) / (cfg.sweep_im_n - 1));
        for (int j = 0; j < cfg.sweep_re_n; ++j) {
            double re = cfg.sweep_re_lo +
                        (cfg.sweep_re_hi - cfg.sweep_re_lo) * (cfg.sweep_re_n == 1 ? 0 : double(j) / (cfg.sweep_re_n - 1));
            ShapeParams sp = shape_from_slice(fam, im, re);
            if (!admissible(sp)) {
                write_csv_row(out, {re, im, 0.0, 0.0, 0.0, 0.0});
                continue;
            }
            PeriodReport rep = period_integrals(derive_params(sp));
            write_csv_row(out, {re, im, rep.first, rep.second, rep.residual, 1.0});
        }
    }
    std::cout << "sweep written to " << cfg.output_dir << "/sweep_" << cfg.family << ".csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical construction of the C2, L2 and L4 triply periodic minimal surfaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    auto* solve = app.add_subcommand("solve", "locate period-closing parameters on a slice");
    auto* build = app.add_subcommand("build", "integrate the immersion and export meshes");
    auto* verify = app.add_subcommand("verify", "run the verification checks");
    auto* sweep = app.add_subcommand("sweep", "tabulate period residuals over the parameter domain");
    for (auto* cmd : {solve, build, verify, sweep}) apply_flags(cmd, cfg, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        RunConfig merged = merge_config(cfg, config_path, cmd);
        if (cmd == solve) return cmd_solve(merged);
        if (cmd == build) return cmd_build(merged);
        if (cmd == verify) return cmd_verify(merged);
        if (cmd == sweep) return cmd_sweep(merged);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const AdmissibilityError& e) {
        std::cerr << "inadmissible parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
