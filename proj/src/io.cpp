#include "rings/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rings/errors.hpp"

namespace rings {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

double parse_double(const std::string& s, int line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError("line " + std::to_string(line) + ": not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

void write_field_csv(std::ostream& os, const RingField& f) {
    os << "# m=" << f.m << " N=" << f.N << " mu=" << fmt17(f.mu) << '\n';
    for (const auto& kv : f.meta) os << "# " << kv << '\n';
    os << "x,y,value\n";
    for (std::size_t k = 0; k < f.values.size(); ++k)
        os << fmt17(f.x[k]) << ',' << fmt17(f.y[k]) << ',' << fmt17(f.values[k]) << '\n';
}

void export_field(const RingField& field, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_field_csv(os, field);
    if (!os) throw IoError("write to '" + path + "' failed");
}

RingField read_field_csv(std::istream& is) {
    RingField f;
    std::string line;
    int ln = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++ln;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.size() > 2 ? line.substr(2) : "";
            if (!header) {
                std::istringstream in(body);
                std::string tok;
                while (in >> tok) {
                    const auto eq = tok.find('=');
                    if (eq == std::string::npos) throw ParseError("line " + std::to_string(ln) + ": bad header");
                    const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
                    if (k == "m") f.m = int(parse_double(v, ln));
                    else if (k == "N") f.N = int(parse_double(v, ln));
                    else if (k == "mu") f.mu = parse_double(v, ln);
                }
                header = true;
            } else {
                f.meta.push_back(body);
            }
            continue;
        }
        if (line == "x,y,value") continue;
        const auto cols = split(line, ',');
        if (cols.size() != 3) throw ParseError("line " + std::to_string(ln) + ": expected x,y,value");
        f.x.push_back(parse_double(cols[0], ln));
        f.y.push_back(parse_double(cols[1], ln));
        f.values.push_back(parse_double(cols[2], ln));
    }
    if (!header) throw ParseError("missing '# m=.. N=.. mu=..' header");
    return f;
}

RingField import_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    return read_field_csv(is);
}

void write_radial_dump(std::ostream& os, const RingField& f) {
    for (std::size_t n = 0; n < f.mode_amplitudes.size(); ++n) {
        os << "# mode=" << n << '\n' << "r,u_n_comp0,u_n_comp1\n";
        for (std::size_t k = 0; k < f.radial_r.size(); ++k) {
            const Vec2& u = f.mode_amplitudes[n][k];
            os << fmt17(f.radial_r[k]) << ',' << fmt17(u[0]) << ',' << fmt17(u[1]) << '\n';
        }
    }
}

std::string solution_flags(const MatchSolution& s) {
    std::vector<std::string> fl;
    if (s.primary()) fl.push_back("primary");
    if (s.harmonic_of) fl.push_back("harmonic=" + std::to_string(*s.harmonic_of));
    if (s.dm_minus) fl.push_back("dm_minus");
    if (s.inherited) fl.push_back("inherited");
    if (s.degenerate) fl.push_back("degenerate");
    if (s.canonical) fl.push_back("canonical");
    if (fl.empty()) return "-";
    std::string out = fl[0];
    for (std::size_t i = 1; i < fl.size(); ++i) out += "," + fl[i];
    return out;
}

void write_solution_table(std::ostream& os, const MatchProblem& p, const std::vector<MatchSolution>& sols) {
    for (const auto& s : sols) {
        os << p.m << ' ' << p.N;
        for (Eigen::Index i = 0; i < s.a.size(); ++i) os << ' ' << fmt17(s.a[i]);
        os << ' ' << fmt17(s.residual_norm) << ' ' << solution_flags(s) << '\n';
    }
}

std::vector<TableRow> read_solution_table(std::istream& is) {
    std::vector<TableRow> rows;
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::vector<std::string> tok;
        std::string t;
        while (in >> t) tok.push_back(t);
        if (tok.size() < 5) throw ParseError("line " + std::to_string(ln) + ": too few fields");
        TableRow r;
        r.m = int(parse_double(tok[0], ln));
        r.N = int(parse_double(tok[1], ln));
        if (r.N < 0 || tok.size() != std::size_t(r.N) + 5)
            throw ParseError("line " + std::to_string(ln) + ": expected N+5 fields");
        r.a.resize(r.N + 1);
        for (int i = 0; i <= r.N; ++i) r.a[i] = parse_double(tok[2 + i], ln);
        r.residual = parse_double(tok[r.N + 3], ln);
        r.flags = tok[r.N + 4];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_branch_csv(std::ostream& os, const BranchResult& br) {
    os << "# slope=" << fmt17(br.slope) << " halted=" << (br.halted ? 1 : 0);
    if (br.halted) os << " fold_lo=" << fmt17(br.fold_lo) << " fold_hi=" << fmt17(br.fold_hi);
    os << "\nmu,l2_norm,converged\n";
    for (const auto& p : br.points) os << fmt17(p.mu) << ',' << fmt17(p.l2) << ',' << (p.converged ? 1 : 0) << '\n';
}

void write_state_snapshot(std::ostream& os, const GalerkinGrid& g, const GalerkinState& st) {
    os << "# mu=" << fmt17(st.mu) << " R_max=" << fmt17(g.R_max) << " h=" << fmt17(g.h) << " m=" << g.m
       << " modes=" << g.n_modes << "\nr,mode,comp0,comp1\n";
    for (int n = 0; n < g.n_modes; ++n)
        for (int i = 0; i < g.M; ++i) {
            const Vec2 u = st.at(g, n, i);
            os << fmt17(g.r[i]) << ',' << n << ',' << fmt17(u[0]) << ',' << fmt17(u[1]) << '\n';
        }
}

void write_gl_csv(std::ostream& os, const GLSolution& sol) {
    os << "# c0=" << fmt17(sol.c0) << " c3=" << fmt17(sol.c3) << " q0=" << fmt17(sol.q0)
       << " q_plus=" << fmt17(sol.q_plus) << "\ns,q,dq\n";
    for (std::size_t k = 0; k < sol.s_grid.size(); ++k)
        os << fmt17(sol.s_grid[k]) << ',' << fmt17(sol.q_samples[k]) << ',' << fmt17(sol.dq_samples[k]) << '\n';
}

void write_continuum_csv(std::ostream& os, const ContinuumSolution& sol) {
    os << "# M=" << sol.alpha.size() << " residual=" << fmt17(sol.residual_norm) << "\nt,alpha\n";
    for (Eigen::Index k = 0; k < sol.alpha.size(); ++k)
        os << fmt17(sol.t_grid[k]) << ',' << fmt17(sol.alpha[k]) << '\n';
}

void write_distance_table(std::ostream& os, const std::vector<DistanceRow>& rows) {
    os << "N1,N2,sup_distance\n";
    for (const auto& r : rows)
        os << r.N1 << ',' << (r.N2 == 0 ? std::string("continuum") : std::to_string(r.N2)) << ','
           << fmt17(r.sup_distance) << '\n';
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    fn(os);
    if (!os) throw IoError("write to '" + path + "' failed");
}

}  // namespace rings
