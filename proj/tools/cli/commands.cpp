// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/mesh.hpp"
#include "bjorling/schwarz_oracle.hpp"
#include "bjorling/solver_fd.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bjorling::cli {

namespace {

constexpr double kFdThreshold = 1e-4;
constexpr double kDataTolerance = 1e-9;
constexpr double kProfileStep = 1e-3;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_zero_function(const PrescribedH& h)
{
    return h.h.is_constant() && eval_real(h.h, std::vector<double>{0.0, 0.0, 1.0}) == 0.0;
}

Periodicity declared_periodicity(const RunConfig& cfg, const VecExpr3& beta)
{
    switch (cfg.periodicity) {
    case PeriodKind::None:
        return Periodicity::none();
    case PeriodKind::Periodic:
        return Periodicity::periodic(cfg.T);
    case PeriodKind::Moebius:
        return Periodicity::moebius(cfg.T);
    case PeriodKind::Helicoidal:
        return Periodicity::helicoidal(cfg.T, eval_at(beta, cfg.s0 + cfg.T) - eval_at(beta, cfg.s0));
    }
    return Periodicity::none();
}

void print_reports(const std::vector<CheckReport>& reports, std::ostream& out)
{
    for (const auto& r : reports) {
        out << format_report(r) << '\n';
    }
}

bool all_pass(const std::vector<CheckReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

/// Validation lines for the data; the returned flag is the overall verdict.
bool validate_prepared(const RunConfig& cfg, const PreparedRun& run, std::ostream& out, std::ostream& err)
{
    const ValidationReport v = validate_data(run.data, 1024, kDataTolerance);
    std::vector<CheckReport> reports;
    reports.push_back({"data_length", v.r_len, v.s_len, 0.0, kDataTolerance, v.r_len <= kDataTolerance});
    reports.push_back({"data_orthogonality", v.r_orth, v.s_orth, 0.0, kDataTolerance, v.r_orth <= kDataTolerance});
    print_reports(reports, out);
    char buf[128];
    std::snprintf(buf, sizeof buf, "check=regularity min=%.6e pass=%s", v.r_reg,
                  v.r_reg >= 1e-8 ? "true" : "false");
    out << buf << '\n';
    bool ok = v.pass;
    if (!v.pass) {
        err << "error: the data violate |beta'| = |B|, <beta', B> = 0 or regularity\n";
    }

    if (cfg.periodicity != PeriodKind::None) {
        const Periodicity found = classify_periodicity(run.data, cfg.T, kDataTolerance);
        const bool match = found.kind == cfg.periodicity;
        out << "check=periodicity declared=" << to_string(cfg.periodicity) << " detected=" << to_string(found.kind)
            << " T=" << format_double(cfg.T) << " pass=" << (match ? "true" : "false") << '\n';
        if (!match) {
            err << "error: declared periodicity '" << to_string(cfg.periodicity) << "' but the data are '"
                << to_string(found.kind) << "' for T = " << cfg.T << '\n';
            ok = false;
        }
    }
    if (cfg.periodicity == PeriodKind::Moebius) {
        out << "check=antisymmetry pass=" << (run.h.antisym ? "true" : "false") << '\n';
        if (!run.h.antisym) {
            err << "error: Moebius runs need H(-x) = -H(x) for the quotient to carry a well-defined mean "
                   "curvature; '"
                << cfg.h << "' is not antipodally antisymmetric\n";
            ok = false;
        }
    }
    return ok;
}

std::filesystem::path report_path(const std::filesystem::path& mesh)
{
    std::filesystem::path p = mesh;
    p.replace_extension();
    p += ".report.txt";
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw MeshError("cannot write '" + path.string() + "'");
    }
}

std::string run_summary(const RunConfig& cfg, const SolveOutcome& solved)
{
    std::ostringstream s;
    s << "name=" << cfg.name << '\n';
    s << "method=" << cfg.method << '\n';
    s << "N=" << solved.strip.grid.N << '\n';
    s << "M_t=" << solved.strip.M_t << '\n';
    s << "delta=" << format_double(solved.strip.delta) << '\n';
    if (solved.radius) {
        s << "K=" << cfg.K << '\n';
        s << "radius_min=" << format_double(solved.radius->min_radius) << '\n';
        s << "delta_suggested=" << format_double(solved.radius->suggested_delta) << '\n';
        s << "delta_truncation=" << format_double(solved.truncation_cap) << '\n';
    } else {
        s << "fd.dt=" << format_double(cfg.fd.dt) << '\n';
        s << "fd.steps=" << cfg.fd.n_steps << '\n';
    }
    return s.str();
}

void apply_method(RunConfig& cfg, const std::optional<std::string>& method)
{
    if (method) {
        if (*method != "ck" && *method != "fd") {
            throw ConfigError("method must be ck or fd");
        }
        cfg.method = *method;
    }
}

SurfaceMesh build_mesh(const RunConfig& cfg, const SolutionStrip& strip)
{
    if (cfg.periodicity == PeriodKind::Moebius && cfg.glue) {
        return mobius_glue(strip, cfg.T, true, check_threshold(cfg, "mobius_involution"));
    }
    return strip_to_mesh(strip);
}

void write_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path)
{
    if (path.extension() == ".ply") {
        write_ply(mesh, path);
    } else if (path.extension() == ".obj") {
        write_obj(mesh, path);
    } else {
        throw ConfigError("output must end in .obj or .ply, got '" + path.string() + "'");
    }
}

/// The translator profile covering the height range of a strip.
TranslatorProfile profile_for(double tau, const SolutionStrip& strip)
{
    double z_max = 0.0;
    for (const Vec3& p : strip.pos) {
        z_max = std::max(z_max, std::abs(p.z));
    }
    return translator_profile_ode(tau, 2.0 * z_max + 0.05, kProfileStep);
}

SolutionStrip series_strip_like(const RunConfig& cfg, const PreparedRun& run, const SolutionStrip& like)
{
    const CoeffTensor c = expand_coefficients(run.data, run.h, run.grid, cfg.K);
    return evaluate_strip(c, like.delta, like.M_t, {true, cfg.safety});
}

} // namespace

PreparedRun prepare(const RunConfig& cfg)
{
    auto parse_named = [](const std::string& key, const std::string& text, const VarSet& vars) {
        try {
            return parse_expr(text, vars);
        } catch (const ParseError& e) {
            throw ConfigError(key + " = \"" + text + "\": " + e.what());
        }
    };
    const char* axes[] = {"x", "y", "z"};
    VecExpr3 beta;
    VecExpr3 field;
    for (std::size_t i = 0; i < 3; ++i) {
        beta[i] = parse_named(std::string("beta.") + axes[i], cfg.beta[i], VarSet::curve());
        field[i] = parse_named(std::string("B.") + axes[i], cfg.field[i], VarSet::curve());
    }
    PreparedRun run;
    run.data.beta = beta;
    run.data.field = field;
    run.data.s0 = cfg.s0;
    run.data.s1 = cfg.s1;
    run.data.periodicity = declared_periodicity(cfg, beta);
    run.h.h = parse_named("H", cfg.h, VarSet::sphere());
    run.h.antisym = check_antipodal_antisymmetry(run.h);
    run.grid = SGrid{cfg.s0, cfg.s1, cfg.N, cfg.periodic_grid};
    run.grid.check();
    return run;
}

SolveOutcome solve_run(const RunConfig& cfg, const PreparedRun& run)
{
    SolveOutcome out;
    if (cfg.method == "fd") {
        out.strip = march(run.data, run.h, run.grid, cfg.fd);
        return out;
    }
    const CoeffTensor c = expand_coefficients(run.data, run.h, run.grid, cfg.K);
    out.radius = estimate_radius(c, cfg.safety);
    out.truncation_cap = truncation_delta(c);
    double delta = 0.0;
    if (cfg.delta) {
        delta = *cfg.delta;
    } else {
        delta = std::min(out.radius->suggested_delta, out.truncation_cap);
        if (!std::isfinite(delta)) {
            throw DataError("the series terminates everywhere; set delta explicitly");
        }
    }
    out.strip = evaluate_strip(c, delta, cfg.M_t, {cfg.allow_beyond_radius, cfg.safety});
    return out;
}

double check_threshold(const RunConfig& cfg, const std::string& check)
{
    if (const auto it = cfg.thresholds.find(check); it != cfg.thresholds.end()) {
        return it->second;
    }
    if (check == "cross_solver") {
        return kFdThreshold;
    }
    if (check == "translator") {
        return cfg.method == "fd" ? kFdThreshold : 1e-5;
    }
    if (cfg.method == "fd") {
        return kFdThreshold;
    }
    if (check == "conformality") {
        return kConformalityThreshold;
    }
    if (check == "symmetry") {
        return kSymmetryThreshold;
    }
    return kGeometricThreshold;
}

std::vector<std::string> effective_checks(const RunConfig& cfg)
{
    if (cfg.checks_given) {
        return cfg.checks;
    }
    std::vector<std::string> checks = {"conformality", "mean_curvature"};
    if (cfg.periodicity == PeriodKind::Moebius) {
        checks.emplace_back("mobius_involution");
        checks.emplace_back("normal_antipodality");
    }
    return checks;
}

std::vector<CheckReport> run_checks(const RunConfig& cfg, const PreparedRun& run, const SolveOutcome& solved,
                                    const std::vector<std::string>& checks)
{
    const SolutionStrip& strip = solved.strip;
    std::vector<CheckReport> reports;
    for (const auto& name : checks) {
        const double thr = check_threshold(cfg, name);
        if (name == "conformality") {
            reports.push_back(conformality_check(strip, thr));
        } else if (name == "mean_curvature") {
            reports.push_back(mean_curvature_check(strip, run.h, thr));
        } else if (name == "pde_residual") {
            reports.push_back(pde_residual_check(strip, run.h, thr));
        } else if (name == "symmetry") {
            reports.push_back(symmetry_check(strip, cfg.symmetry_phi, cfg.symmetry_v, cfg.symmetry_shift, thr));
        } else if (name == "mobius_involution") {
            reports.push_back(mobius_involution_check(strip, cfg.T, thr));
        } else if (name == "normal_antipodality") {
            reports.push_back(normal_antipodality_check(strip, cfg.T, thr));
        } else if (name == "schwarz") {
            if (!is_zero_function(run.h)) {
                throw DataError("the schwarz check needs H = 0");
            }
            const SolutionStrip ref = schwarz_solve(run.data, run.grid, strip.delta, strip.M_t);
            reports.push_back(strip_difference_check("schwarz", strip, ref, thr));
        } else if (name == "translator") {
            if (!cfg.translator_tau) {
                throw DataError("the translator check needs translator.tau");
            }
            reports.push_back(translator_comparison(profile_for(*cfg.translator_tau, strip), strip, thr));
        } else if (name == "cross_solver") {
            const SolutionStrip fd = cfg.method == "fd" ? strip : march(run.data, run.h, run.grid, cfg.fd);
            const SolutionStrip ck = series_strip_like(cfg, run, fd);
            reports.push_back(strip_difference_check("cross_solver", fd, ck, thr, std::min(0.1, fd.delta)));
        } else {
            throw ConfigError("unknown check '" + name + "'");
        }
    }
    return reports;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const PreparedRun run = prepare(cfg);
    return validate_prepared(cfg, run, out, err) ? kOk : kCheckFailed;
}

int cmd_solve(RunConfig cfg, const std::optional<std::string>& method, const std::optional<std::string>& out_path,
              std::ostream& out, std::ostream& err)
{
    apply_method(cfg, method);
    const PreparedRun run = prepare(cfg);
    std::ostringstream validation;
    if (!validate_prepared(cfg, run, validation, err)) {
        out << validation.str();
        return kCheckFailed;
    }
    const SolveOutcome solved = solve_run(cfg, run);
    const auto reports = run_checks(cfg, run, solved, effective_checks(cfg));

    SurfaceMesh mesh = build_mesh(cfg, solved.strip);
    mesh.metadata = {{"name", cfg.name}, {"method", cfg.method}, {"delta", format_double(solved.strip.delta)}};
    const std::filesystem::path mesh_path = out_path ? *out_path : cfg.output;
    write_mesh(mesh, mesh_path);

    std::ostringstream report;
    report << run_summary(cfg, solved);
    report << "mesh=" << mesh_path.filename().string() << '\n';
    report << "vertices=" << mesh.vertices.size() << '\n';
    report << "triangles=" << mesh.triangles.size() << '\n';
    report << "boundary_loops=" << boundary_loop_count(mesh) << '\n';
    report << "orientable=" << (is_orientable(mesh) ? "true" : "false") << '\n';
    for (const auto& r : reports) {
        report << format_report(r) << '\n';
    }
    const auto rpath = report_path(mesh_path);
    write_file(rpath, report.str());

    out << report.str();
    out << "wrote " << mesh_path.string() << " and " << rpath.string() << '\n';
    return all_pass(reports) ? kOk : kCheckFailed;
}

int cmd_verify(RunConfig cfg, const std::optional<std::string>& method, std::ostream& out, std::ostream& err)
{
    apply_method(cfg, method);
    const PreparedRun run = prepare(cfg);
    std::ostringstream validation;
    if (!validate_prepared(cfg, run, validation, err)) {
        out << validation.str();
        return kCheckFailed;
    }
    const auto checks = effective_checks(cfg);
    if (checks.empty()) {
        err << "warning: the check list is empty; nothing to verify\n";
        return kOk;
    }
    const SolveOutcome solved = solve_run(cfg, run);
    const auto reports = run_checks(cfg, run, solved, checks);
    print_reports(reports, out);
    return all_pass(reports) ? kOk : kCheckFailed;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const PreparedRun run = prepare(cfg);
    const bool schwarz = is_zero_function(run.h);
    if (!schwarz && !cfg.translator_tau) {
        err << "error: no oracle applies; the Schwarz formula needs H = 0 and the translator oracle needs "
               "translator.tau\n";
        return kInputError;
    }
    const SolveOutcome solved = solve_run(cfg, run);
    const SolutionStrip& strip = solved.strip;
    CheckReport report;
    SurfaceMesh mesh;
    if (schwarz) {
        const SolutionStrip ref = schwarz_solve(run.data, run.grid, strip.delta, strip.M_t);
        report = strip_difference_check("schwarz", strip, ref, check_threshold(cfg, "schwarz"));
        mesh = strip_to_mesh(ref);
        out << "oracle=schwarz delta=" << format_double(strip.delta) << '\n';
    } else {
        const TranslatorProfile profile = profile_for(*cfg.translator_tau, strip);
        report = translator_comparison(profile, strip, check_threshold(cfg, "translator"));
        const int half = static_cast<int>(profile.points.size()) / 2;
        int stride = 1;
        while (half / stride > 50 || half % stride != 0) {
            ++stride;
        }
        mesh = strip_to_mesh(revolution_strip(profile, cfg.N, stride));
        out << "oracle=translator tau=" << format_double(profile.tau)
            << " min_radius=" << format_double(profile.min_radius()) << '\n';
    }
    std::filesystem::path path = cfg.output;
    path.replace_extension();
    path += ".oracle.obj";
    mesh.metadata = {{"name", cfg.name}, {"oracle", schwarz ? "schwarz" : "translator"}};
    write_obj(mesh, path);
    out << format_report(report) << '\n';
    out << "wrote " << path.string() << '\n';
    return report.pass ? kOk : kCheckFailed;
}

int cmd_gallery(const std::optional<std::string>& name, std::ostream& out, std::ostream& err)
{
    const auto names = gallery_names();
    if (!name) {
        for (const auto& n : names) {
            out << n << '\n';
        }
        return kOk;
    }
    if (std::find(names.begin(), names.end(), *name) == names.end()) {
        err << "error: unknown gallery preset '" << *name << "'; available:";
        for (const auto& n : names) {
            err << ' ' << n;
        }
        err << '\n';
        return kInputError;
    }
    std::ifstream f(gallery_dir() / (*name + ".cfg"), std::ios::binary);
    out << f.rdbuf();
    return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical solver for the Bjorling problem of prescribed mean curvature surfaces"};
    app.require_subcommand(1);

    std::string config_arg;
    std::optional<std::string> method;
    std::optional<std::string> out_path;
    std::optional<std::string> preset;

    auto* validate = app.add_subcommand("validate", "Check the data of a run configuration");
    validate->add_option("config", config_arg, "Config file or gallery preset")->required();
    auto* solve = app.add_subcommand("solve", "Solve, run the checks, write the mesh and a report");
    solve->add_option("config", config_arg, "Config file or gallery preset")->required();
    solve->add_option("--method", method, "ck (series) or fd (finite differences)")
        ->check(CLI::IsMember({"ck", "fd"}));
    solve->add_option("--out", out_path, "Mesh path (.obj or .ply)");
    auto* verify = app.add_subcommand("verify", "Solve and print the configured checks");
    verify->add_option("config", config_arg, "Config file or gallery preset")->required();
    verify->add_option("--method", method, "ck (series) or fd (finite differences)")
        ->check(CLI::IsMember({"ck", "fd"}));
    auto* oracle = app.add_subcommand("oracle", "Compare the solution with an independent reference");
    oracle->add_option("config", config_arg, "Config file or gallery preset")->required();
    auto* gallery = app.add_subcommand("gallery", "Print a gallery preset, or list them");
    gallery->add_option("name", preset, "Preset name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (gallery->parsed()) {
            return cmd_gallery(preset, out, err);
        }
        const RunConfig cfg = load_config(resolve_config(config_arg));
        if (validate->parsed()) {
            return cmd_validate(cfg, out, err);
        }
        if (solve->parsed()) {
            return cmd_solve(cfg, method, out_path, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, method, out, err);
        }
        return cmd_oracle(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const MeshError& e) {
        err << "mesh error: " << e.what() << '\n';
        return kCheckFailed;
    }
}

} // namespace bjorling::cli
