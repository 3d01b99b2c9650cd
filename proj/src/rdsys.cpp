#include "rings/rdsys.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "rings/errors.hpp"

namespace rings {

RDSystem::RDSystem() {
    for (auto& comp : C)
        for (auto& m : comp) m.setZero();
}

void RDSystem::symmetrize() {
    for (auto& q : Q) q = 0.5 * (q + q.transpose()).eval();
    for (auto& comp : C) {
        double t[2][2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) t[i][j][k] = comp[i](j, k);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    comp[i](j, k) = (t[i][j][k] + t[i][k][j] + t[j][i][k] + t[j][k][i] +
                                     t[k][i][j] + t[k][j][i]) / 6.0;
    }
}

Vec2 RDSystem::quad(const Vec2& u, const Vec2& v) const {
    return Vec2(u.dot(Q[0] * v), u.dot(Q[1] * v));
}

Vec2 RDSystem::cubic(const Vec2& u, const Vec2& v, const Vec2& w) const {
    Vec2 out;
    for (int c = 0; c < 2; ++c)
        out[c] = u[0] * v.dot(C[c][0] * w) + u[1] * v.dot(C[c][1] * w);
    return out;
}

Mat2 RDSystem::quad_jacobian(const Vec2& v) const {
    Mat2 J;
    J.row(0) = (Q[0] * v).transpose();
    J.row(1) = (Q[1] * v).transpose();
    return J;
}

Mat2 RDSystem::cubic_jacobian(const Vec2& v, const Vec2& w) const {
    Mat2 J;
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 2; ++i) J(c, i) = v.dot(C[c][i] * w);
    return J;
}

RDSystem sh_system(double gamma) {
    RDSystem s;
    s.M1 << -1, 1, 0, -1;
    s.M2 << 0, 0, -1, 0;
    s.Q[1](0, 0) = gamma;
    s.C[1][0](0, 0) = -1.0;
    std::ostringstream os;
    os.precision(17);
    os << "swift-hohenberg gamma=" << gamma;
    s.label = os.str();
    return s;
}

TuringData verify_turing(const RDSystem& sys) {
    const double scale = std::max(1.0, sys.M1.norm());
    const double tol = 1e-9 * scale;
    const Mat2 A = sys.M1 + Mat2::Identity();
    if (std::abs(A.determinant()) > tol)
        throw NotTuring("det(M1 + I) = " + std::to_string(A.determinant()) + " is not zero");
    if (A.norm() <= tol)
        throw NotDoubleEigenvalue("M1 = -I: eigenvalue -1 is geometrically double");
    if (std::abs(sys.M1.trace() + 2.0) > tol)
        throw NotDoubleEigenvalue("eigenvalue -1 of M1 is algebraically simple");

    // A is rank one and nilpotent: A = U0 w^T with w^T U0 = 0.
    TuringData td;
    int col = A.col(0).norm() >= A.col(1).norm() ? 0 : 1;
    Vec2 U0 = A.col(col);
    int big = std::abs(U0[0]) >= std::abs(U0[1]) ? 0 : 1;
    U0 /= U0[big];
    Vec2 w(A.col(0).dot(U0), A.col(1).dot(U0));
    w /= U0.squaredNorm();

    // A U1 = U0 and U1 orthogonal to U0.
    Mat2 B;
    B.row(0) = w.transpose();
    B.row(1) = U0.transpose();
    Vec2 U1 = B.fullPivLu().solve(Vec2(1.0, 0.0));

    Mat2 P;
    P.col(0) = U0;
    P.col(1) = U1;
    Mat2 Pinv = P.inverse();
    td.U0 = U0;
    td.U1 = U1;
    td.U0s = Pinv.row(0).transpose();
    td.U1s = Pinv.row(1).transpose();
    return td;
}

BifCoefficients coefficients(const RDSystem& sys, const TuringData& td) {
    BifCoefficients bc;
    bc.c0 = 0.25 * td.U1s.dot(-sys.M2 * td.U0);
    const Vec2 Q00 = sys.quad(td.U0, td.U0);
    const Vec2 Q01 = sys.quad(td.U0, td.U1);
    const Vec2 C000 = sys.cubic(td.U0, td.U0, td.U0);
    const double q1 = td.U1s.dot(Q00);
    bc.c3 = -((5.0 / 6.0 * (td.U0s.dot(Q00) + td.U1s.dot(Q01)) + 19.0 / 18.0 * q1) * q1 +
              0.75 * td.U1s.dot(C000));
    bc.nu = 0.5 * std::sqrt(std::numbers::pi / 6.0) * q1;
    return bc;
}

BifCoefficients coefficients(const RDSystem& sys) { return coefficients(sys, verify_turing(sys)); }

bool check_subcriticality(const RDSystem& sys) {
    const BifCoefficients bc = coefficients(sys);
    return bc.c0 > 0.0 && bc.c3 < 0.0;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& text, std::size_t want, int line) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<double> v;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": bad number '" + tok + "'");
        }
    }
    if (v.size() != want)
        throw ParseError("line " + std::to_string(line) + ": expected " + std::to_string(want) +
                         " numbers, got " + std::to_string(v.size()));
    return v;
}

}  // namespace

RDSystem parse_system(std::istream& in) {
    RDSystem sys;
    bool have_m1 = false, have_m2 = false, shorthand = false;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        if (s.rfind("sh", 0) == 0 && (s.size() == 2 || s[2] == ' ' || s[2] == '\t')) {
            const auto eq = s.find("gamma=");
            if (eq == std::string::npos)
                throw ParseError("line " + std::to_string(line) + ": expected 'sh gamma=<value>'");
            const double g = parse_numbers(s.substr(eq + 6), 1, line)[0];
            sys = sh_system(g);
            shorthand = true;
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key == "label") {
            sys.label = val;
        } else if (key == "M1" || key == "M2") {
            auto v = parse_numbers(val, 4, line);
            Mat2& M = key == "M1" ? sys.M1 : sys.M2;
            M << v[0], v[1], v[2], v[3];
            (key == "M1" ? have_m1 : have_m2) = true;
        } else if (key == "Q0" || key == "Q1") {
            auto v = parse_numbers(val, 4, line);
            sys.Q[key[1] - '0'] << v[0], v[1], v[2], v[3];
        } else if (key == "C0" || key == "C1") {
            auto v = parse_numbers(val, 8, line);
            auto& comp = sys.C[key[1] - '0'];
            for (int i = 0; i < 2; ++i) comp[i] << v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3];
        } else {
            throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    if (!shorthand && !(have_m1 && have_m2)) throw ParseError("system file must define M1 and M2");
    sys.symmetrize();
    return sys;
}

RDSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file '" + path + "'");
    return parse_system(in);
}

}  // namespace rings
