#include "rings/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "rings/continuum.hpp"
#include "rings/errors.hpp"
#include "rings/fixtures.hpp"
#include "rings/galerkin.hpp"
#include "rings/glradial.hpp"
#include "rings/io.hpp"
#include "rings/matching.hpp"
#include "rings/profile.hpp"
#include "rings/rdsys.hpp"

namespace rings {

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::string out = "-";
    int threads = 0;
    bool sh = false;
    double gamma = 1.6;
    std::string system;
    int m = 2;
    int N = -1;
    double mu = 0.05;
    double disc = 20.0;
    int sign = 1;
    std::vector<double> a;
    int id = -1;
    std::string solution_file;

    // match
    int starts = -1;
    bool compare_paper = false;
    // gl
    double c0 = 0.0, c3 = 0.0;
    bool c0_set = false, c3_set = false;
    double rtol = 1e-10;
    double smax_factor = 30.0;
    // synthesize
    double r0 = -1.0, r1 = 0.5;
    bool three_region = false;
    std::string blend = "hard";
    int points = 101;
    int projection = 0;
    bool square = false;
    std::string radial;
    // verify
    std::vector<double> mus;
    double R = 100.0, h = 0.05;
    int modes = -1;
    bool refine = false;
    std::string branch;
    std::string snapshot;
    double tol = 1e-9;
    bool hard_seam = false;
    // continuum
    int M = 129;
    std::vector<int> family{5, 10, 20, 40, 80};
    std::string table;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string join(const VectorXd& v, const char* sep = ",") {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? sep : "") + fmt17(v[i]);
    return s;
}

// Data goes to --out; the human summary goes to stdout unless the data does.
std::ostream& report_stream(const Options& o) { return o.out == "-" ? std::cerr : std::cout; }

RDSystem make_system(const Options& o) {
    if (!o.system.empty()) {
        if (o.sh) throw ParseError("--sh and --system are mutually exclusive");
        return load_system(o.system);
    }
    return sh_system(o.gamma);
}

std::string system_label(const Options& o) {
    return o.system.empty() ? "sh gamma=" + fmt17(o.gamma) : "file " + o.system;
}

VectorXd select_amplitudes(const Options& o) {
    if (!o.a.empty()) {
        if (o.id >= 0 || !o.solution_file.empty()) throw ParseError("--a excludes --id and --solution-file");
        VectorXd a = Eigen::Map<const VectorXd>(o.a.data(), Eigen::Index(o.a.size()));
        if (o.N >= 0 && a.size() != o.N + 1)
            throw DimensionMismatch("--a has " + std::to_string(a.size()) + " entries but -N is " +
                                    std::to_string(o.N));
        return a;
    }
    if (o.id < 0) throw ParseError("supply amplitudes with --a or a solution with --id");
    if (!o.solution_file.empty()) {
        std::ifstream in(o.solution_file);
        if (!in) throw IoError("cannot open '" + o.solution_file + "'");
        const auto rows = read_solution_table(in);
        if (o.id >= int(rows.size()))
            throw DomainError("solution id " + std::to_string(o.id) + " out of range (" +
                              std::to_string(rows.size()) + " rows)");
        return rows[o.id].a;
    }
    if (o.N < 0) throw ParseError("--id without --solution-file needs -N");
    SolveOptions so;
    so.seed = o.seed;
    so.threads = o.threads;
    so.starts = o.starts;
    const auto sols = solve_matching({o.m, o.N}, so);
    if (o.id >= int(sols.size()))
        throw DomainError("solution id " + std::to_string(o.id) + " out of range (" + std::to_string(sols.size()) +
                          " solutions)");
    return sols[o.id].a;
}

int cmd_coeffs(const Options& o) {
    const RDSystem sys = make_system(o);
    const TuringData td = verify_turing(sys);
    const BifCoefficients bc = coefficients(sys, td);
    const bool sub = bc.c0 > 0.0 && bc.c3 < 0.0;
    std::ostringstream s;
    s << "system=" << system_label(o) << '\n'
      << "kc=" << num(td.kc) << '\n'
      << "U0=" << num(td.U0[0]) << ',' << num(td.U0[1]) << '\n'
      << "U1=" << num(td.U1[0]) << ',' << num(td.U1[1]) << '\n'
      << "U0*=" << num(td.U0s[0]) << ',' << num(td.U0s[1]) << '\n'
      << "U1*=" << num(td.U1s[0]) << ',' << num(td.U1s[1]) << '\n'
      << "c0=" << num(bc.c0) << '\n'
      << "c3=" << num(bc.c3) << '\n'
      << "nu=" << num(bc.nu) << '\n'
      << "subcritical=" << (sub ? "yes" : "no") << '\n';
    with_output(o.out, [&](std::ostream& os) { os << s.str(); });
    return sub ? kExitOk : kExitSupercritical;
}

int cmd_match(const Options& o) {
    const int N = o.N < 0 ? 1 : o.N;
    if (N > 12) throw DomainError("match supports N <= 12, got " + std::to_string(N));
    if (o.m < 1) throw DomainError("m must be positive");
    const MatchProblem p{o.m, N};
    SolveOptions so;
    so.seed = o.seed;
    so.threads = o.threads;
    so.starts = o.starts;
    const auto sols = solve_matching(p, so);
    with_output(o.out, [&](std::ostream& os) {
        os << "# m=" << p.m << " N=" << p.N << " seed=" << o.seed
           << " starts=" << (o.starts < 0 ? 500 * (N + 1) * (N + 1) : o.starts) << '\n';
        write_solution_table(os, p, sols);
    });
    std::ostream& rep = report_stream(o);
    rep << "m=" << p.m << " N=" << p.N << " solutions=" << sols.size() << " primary=" << count_primary(sols)
        << " non-harmonic="
        << std::count_if(sols.begin(), sols.end(), [](const MatchSolution& s) { return !s.harmonic_of; }) << '\n';
    if (!o.compare_paper) return kExitOk;
    const auto cmp = compare_with_reference(p, sols);
    if (!cmp.has_table) {
        rep << "compare-paper: no reference table for N=" << N << '\n';
        return kExitInput;
    }
    if (cmp.pass()) {
        rep << "compare-paper: PASS, " << cmp.primary << " solutions\n";
        return kExitOk;
    }
    rep << "compare-paper: FAIL, " << cmp.matched_rows << "/" << cmp.reference_rows << " rows matched, "
        << cmp.unmatched_primary << " unlisted roots\n";
    for (const auto& row : cmp.missing) {
        rep << "  missing:";
        for (double v : row) rep << ' ' << num(v);
        rep << '\n';
    }
    return kExitFailure;
}

int cmd_gl(const Options& o) {
    double c0 = o.c0, c3 = o.c3;
    if (!o.c0_set || !o.c3_set) {
        const BifCoefficients bc = coefficients(make_system(o));
        if (!o.c0_set) c0 = bc.c0;
        if (!o.c3_set) c3 = bc.c3;
    }
    GLOptions go;
    go.rtol = o.rtol;
    go.s_max_factor = o.smax_factor;
    const GLSolution sol = find_homoclinic(c0, c3, go);
    with_output(o.out, [&](std::ostream& os) { write_gl_csv(os, sol); });
    report_stream(o) << "c0=" << num(c0) << " c3=" << num(c3) << " q0=" << fmt17(sol.q0)
                     << " q_plus=" << num(sol.q_plus) << " tail_slope=" << num(sol.tail_slope)
                     << " s_max=" << num(sol.s_max) << '\n';
    return kExitOk;
}

ProfileParams profile_params(const Options& o, bool galerkin_seed) {
    ProfileParams pp;
    pp.r0 = o.r0;
    pp.r1 = o.r1;
    pp.sign = o.sign;
    pp.mode = o.three_region ? ProfileMode::ThreeRegion : ProfileMode::TwoRegion;
    if (o.blend == "cosine") pp.blend = SeamBlend::Cosine;
    else if (o.blend == "hard") pp.blend = SeamBlend::Hard;
    else throw ParseError("--blend must be hard or cosine");
    if (galerkin_seed) pp.blend = o.hard_seam ? SeamBlend::Hard : SeamBlend::Cosine;
    return pp;
}

int cmd_synthesize(const Options& o) {
    if (!(o.mu > 0.0)) throw DomainError("mu must be positive, got " + num(o.mu));
    if (o.sign != 1 && o.sign != -1) throw DomainError("--sign must be +1 or -1");
    if (o.projection != 0 && o.projection != 1) throw DomainError("--projection must be 0 or 1");
    const RDSystem sys = make_system(o);
    const VectorXd a = select_amplitudes(o);
    const ProfileContext ctx = make_context(sys, o.m, a, o.mu, profile_params(o, false));
    FieldGrid grid;
    grid.half_width = o.disc;
    grid.points = o.points;
    grid.disc = !o.square;
    RingField f = synthesize_field(ctx, grid, o.projection, o.threads < 1 ? 1 : o.threads);
    f.meta = {
        "system=" + system_label(o),
        "a=" + join(a),
        "sign=" + std::to_string(o.sign),
        "r0=" + fmt17(ctx.r0),
        "r1=" + fmt17(ctx.r1),
        std::string("mode=") + (ctx.mode == ProfileMode::TwoRegion ? "two-region" : "three-region"),
        std::string("blend=") + (ctx.blend == SeamBlend::Hard ? "hard" : "cosine"),
        "half_width=" + fmt17(grid.half_width),
        "points=" + std::to_string(grid.points),
        std::string("domain=") + (grid.disc ? "disc" : "square"),
        "projection=" + std::to_string(o.projection),
        "c0=" + fmt17(ctx.coeffs.c0),
        "c3=" + fmt17(ctx.coeffs.c3),
        "q0=" + fmt17(ctx.gl->q0),
        "seed=" + std::to_string(o.seed),
    };
    for (const auto& v : ctx.violations()) f.meta.push_back("warning=" + v);
    with_output(o.out, [&](std::ostream& os) { write_field_csv(os, f); });
    if (!o.radial.empty()) with_output(o.radial, [&](std::ostream& os) { write_radial_dump(os, f); });
    std::ostream& rep = report_stream(o);
    rep << "m=" << o.m << " N=" << ctx.N << " mu=" << num(o.mu) << " samples=" << f.values.size()
        << " r0=" << num(ctx.r0) << '\n';
    for (const auto& v : ctx.violations()) rep << "warning: " << v << '\n';
    return kExitOk;
}

int cmd_verify(const Options& o) {
    const RDSystem sys = make_system(o);
    const VectorXd a = select_amplitudes(o);
    const int N = int(a.size()) - 1;
    const int modes = o.modes < 0 ? N + 1 : o.modes;
    const GalerkinGrid grid = GalerkinGrid::make(o.R, o.h, modes, o.m);
    std::vector<double> mus = o.mus.empty() ? std::vector<double>{o.mu} : o.mus;

    double b_start = 0, b_end = 0;
    int b_steps = 0;
    if (!o.branch.empty()) {
        if (std::sscanf(o.branch.c_str(), "%lf:%lf:%d", &b_start, &b_end, &b_steps) != 3 || b_steps < 1 ||
            !(b_start > 0) || !(b_end > 0))
            throw ParseError("--branch expects start:end:steps with positive mu values");
    }

    const auto coeffs = coefficients(sys);
    auto gl = std::make_shared<const GLSolution>(find_homoclinic(coeffs.c0, coeffs.c3));
    const ProfileParams pp = profile_params(o, true);

    std::ostringstream table;
    table << "mu,seed_residual_l2,refined,iterations,relative_correction,l2_norm,final_residual_sup\n";
    int rc = kExitOk;
    for (double mu : mus) {
        if (!(mu > 0.0)) throw DomainError("mu must be positive, got " + num(mu));
        const ProfileContext ctx = make_context(sys, gl, o.m, a, mu, pp);
        const GalerkinState seed = seed_from_profile(ctx, grid);
        if (!grid.covers(mu)) report_stream(o) << "warning: R=" << num(o.R) << " < 4 mu^-1/2 at mu=" << num(mu) << '\n';
        const double r_seed = weighted_l2(grid, residual(sys, grid, seed));
        table << fmt17(mu) << ',' << fmt17(r_seed);
        if (!o.refine) {
            table << ",0,0,0," << fmt17(l2_norm(grid, seed)) << ','
                  << fmt17(residual(sys, grid, seed).cwiseAbs().maxCoeff()) << '\n';
            continue;
        }
        NewtonReport rep;
        try {
            const GalerkinState st = newton_refine(sys, grid, seed, o.tol, &rep);
            table << ",1," << rep.iterations << ',' << fmt17(rep.relative_correction) << ','
                  << fmt17(l2_norm(grid, st)) << ',' << fmt17(st.residual_norm) << '\n';
            if (!o.snapshot.empty()) with_output(o.snapshot, [&](std::ostream& os) { write_state_snapshot(os, grid, st); });
        } catch (const NoConvergence&) {
            table << ",0," << rep.iterations << ',' << fmt17(rep.relative_correction) << ",0,"
                  << fmt17(rep.residual_history.empty() ? 0.0 : rep.residual_history.back()) << '\n';
            rc = kExitNoConvergence;
        }
    }

    std::ostream& rep = report_stream(o);
    if (b_steps == 0) {
        with_output(o.out, [&](std::ostream& os) { os << table.str(); });
        return rc;
    }
    rep << table.str();
    const ProfileContext ctx = make_context(sys, gl, o.m, a, b_start, pp);
    const BranchResult br = continue_mu(sys, grid, seed_from_profile(ctx, grid), b_end, b_steps, o.tol);
    with_output(o.out, [&](std::ostream& os) { write_branch_csv(os, br); });
    rep << "branch slope=" << num(br.slope) << " points=" << br.points.size();
    if (br.halted) rep << " halted in [" << num(br.fold_lo) << ", " << num(br.fold_hi) << "]";
    rep << '\n';
    return rc;
}

int cmd_continuum(const Options& o) {
    const auto fam = large_n_family(o.family);
    const ContinuumSolution sol = solve_continuum(o.M);
    const auto rows = compare_large_N(fam, &sol);
    with_output(o.out, [&](std::ostream& os) { write_continuum_csv(os, sol); });
    if (!o.table.empty()) with_output(o.table, [&](std::ostream& os) { write_distance_table(os, rows); });
    std::ostream& rep = report_stream(o);
    rep << "M=" << o.M << " residual=" << num(sol.residual_norm) << " iterations=" << sol.iterations
        << " alpha(0)=" << num(sol.alpha[0]) << " alpha(1)=" << num(sol.alpha[sol.alpha.size() - 1]) << '\n';
    if (o.table.empty()) write_distance_table(rep, rows);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
    Options o;
    CLI::App app{"Localized dihedral ring patterns near a Turing instability"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a TOML/INI file (flags take precedence)");
    app.option_defaults()->always_capture_default();

    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--out", o.out, "Output path, - for stdout");
    app.add_option("--threads", o.threads, "Worker cap, 0 for all cores")->check(CLI::NonNegativeNumber);
    app.add_flag("--sh", o.sh, "Use the Swift-Hohenberg system (default)");
    app.add_option("--gamma", o.gamma, "Swift-Hohenberg quadratic coefficient");
    app.add_option("--system", o.system, "System definition file");
    app.add_option("-m", o.m, "Dihedral order")->check(CLI::PositiveNumber);
    app.add_option("-N", o.N, "Truncation order");
    app.add_option("--mu", o.mu, "Bifurcation parameter");
    app.add_option("--a", o.a, "Mode amplitudes a_0,...,a_N")->delimiter(',');
    app.add_option("--id", o.id, "Row of --solution-file, or index into the computed solution list");
    app.add_option("--solution-file", o.solution_file, "Solution table written by match");
    app.add_option("--starts", o.starts, "Random Newton starts, -1 for 500 (N+1)^2");
    app.add_option("--sign", o.sign, "Pitchfork branch, +1 or -1");

    auto* coeffs = app.add_subcommand("coeffs", "Turing data and bifurcation coefficients");

    auto* match = app.add_subcommand("match", "Solve the cubic matching equation");
    match->add_flag("--compare-paper", o.compare_paper, "Check against the embedded reference tables");

    auto* gl = app.add_subcommand("gl", "Ginzburg-Landau homoclinic");
    gl->add_option("--c0", o.c0, "Linear coefficient");
    gl->add_option("--c3", o.c3, "Cubic coefficient");
    gl->add_option("--rtol", o.rtol, "Integrator relative tolerance");
    gl->add_option("--smax-factor", o.smax_factor, "s_max * sqrt(c0)");

    auto* syn = app.add_subcommand("synthesize", "Evaluate the ring profile on a grid");
    syn->add_option("--disc", o.disc, "Half width (disc radius) of the sample grid");
    syn->add_option("--points", o.points, "Samples per side")->check(CLI::PositiveNumber);
    syn->add_flag("--square", o.square, "Keep the corners of the square grid");
    syn->add_option("--r0", o.r0, "Core/far seam radius, <= 0 for the default");
    syn->add_option("--r1", o.r1, "Middle/far seam at r1 mu^-1/2 (three-region mode)");
    syn->add_flag("--three-region", o.three_region, "Evaluate the middle branch separately");
    syn->add_option("--blend", o.blend, "Seam handling: hard or cosine");
    syn->add_option("--projection", o.projection, "0 for <U0*,u>, 1 for <U1*,u>");
    syn->add_option("--radial", o.radial, "Also write r,u_n_comp0,u_n_comp1 per mode");

    auto* ver = app.add_subcommand("verify", "Galerkin residuals, Newton refinement, mu continuation");
    ver->add_option("--mus", o.mus, "Comma-separated mu list (default: --mu)")->delimiter(',');
    ver->add_option("--R", o.R, "Radial domain length");
    ver->add_option("--step", o.h, "Radial step of the Galerkin grid");
    ver->add_option("--modes", o.modes, "Galerkin modes, -1 for N+1");
    ver->add_flag("--refine", o.refine, "Run Newton from each seed");
    ver->add_option("--branch", o.branch, "Continue in mu: start:end:steps");
    ver->add_option("--snapshot", o.snapshot, "Write the refined state r,mode,comp0,comp1");
    ver->add_option("--tol", o.tol, "Newton sup-norm tolerance");
    ver->add_flag("--hard-seam", o.hard_seam, "Seed without the cosine seam blend");
    ver->add_option("--r0", o.r0, "Core/far seam radius, <= 0 for the default");

    auto* con = app.add_subcommand("continuum", "Continuum matching equation and large-N family");
    con->add_option("-M", o.M, "Grid points on [0,1]")->check(CLI::Range(32, 4097));
    con->add_option("--family", o.family, "Discrete orders N")->delimiter(',');
    con->add_option("--table", o.table, "Write N1,N2,sup_distance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    o.c0_set = gl->count("--c0") > 0;
    o.c3_set = gl->count("--c3") > 0;

    try {
        if (*coeffs) return cmd_coeffs(o);
        if (*match) return cmd_match(o);
        if (*gl) return cmd_gl(o);
        if (*syn) return cmd_synthesize(o);
        if (*ver) return cmd_verify(o);
        if (*con) return cmd_continuum(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitFailure;
}

}  // namespace rings
