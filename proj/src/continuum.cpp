#include "rings/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rings/errors.hpp"

namespace rings {

namespace {

// Trapezoid sum of g(0..n) with spacing h; a single point integrates to 0.
template <class G>
double trap(int n, double h, G g) {
    if (n <= 0) return 0.0;
    double s = 0.5 * (g(0) + g(n));
    for (int l = 1; l < n; ++l) s += g(l);
    return h * s;
}

VectorXd symmetric_extension(const VectorXd& a) {
    const int N = int(a.size()) - 1;
    VectorXd f(2 * N + 1);
    for (int i = -N; i <= N; ++i) f[i + N] = a[std::abs(i)];
    return f;
}

VectorXd convolve(const VectorXd& x, const VectorXd& y) {
    VectorXd z = VectorXd::Zero(x.size() + y.size() - 1);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
    return z;
}

}  // namespace

VectorXd continuum_apply(const VectorXd& al, int M) {
    if (M < 8) throw DimensionMismatch("continuum grid needs M >= 8, got " + std::to_string(M));
    if (al.size() != M)
        throw DimensionMismatch("alpha has " + std::to_string(al.size()) + " samples, expected " +
                                std::to_string(M));
    const int L = M - 1;
    const double h = 1.0 / L;
    // Inner integrals depend on a single shift index.
    VectorXd P(M), S(M), T(M);
    for (int j = 0; j <= L; ++j) {
        P[j] = trap(L - j, h, [&](int l) { return al[l] * al[j + l]; });
        S[j] = trap(j, h, [&](int l) { return al[l] * al[j - l]; });
        T[j] = trap(L - j, h, [&](int l) { return al[l + j] * al[L - l]; });
    }
    VectorXd out(M);
    for (int k = 0; k <= L; ++k) {
        const double I1 = trap(L - k, h, [&](int j) { return al[k + j] * P[j]; });
        const double I2 = trap(L - k, h, [&](int j) { return al[j] * P[j + k]; });
        const double I3 = trap(L - k, h, [&](int j) { return al[k + j] * S[j]; });
        const double I4 = trap(L - k, h, [&](int j) { return al[j] * S[j + k]; });
        const double I5 = trap(k, h, [&](int j) { return al[k - j] * P[j]; });
        const double I6 = trap(k, h, [&](int j) { return al[k - j] * S[j]; });
        const double I7 = trap(k, h, [&](int j) { return al[j + L - k] * T[j]; });
        out[k] = 2 * I1 + 2 * I2 + I3 + I4 + 2 * I5 + I6 + I7;
    }
    return out;
}

MatrixXd continuum_jacobian(const VectorXd& alpha) {
    // For a cubic F: (F(a + e) - F(a - e)) / 2 = DF(a) e + F(e).
    const int M = int(alpha.size());
    MatrixXd J(M, M);
    VectorXd e = VectorXd::Zero(M);
    for (int p = 0; p < M; ++p) {
        e[p] = 1.0;
        J.col(p) = 0.5 * (continuum_apply(alpha + e, M) - continuum_apply(alpha - e, M)) -
                   continuum_apply(e, M);
        e[p] = 0.0;
    }
    return J;
}

double interp_uniform(const VectorXd& y, double t) {
    const int L = int(y.size()) - 1;
    if (L <= 0) return y.size() ? y[0] : 0.0;
    const double x = std::clamp(t, 0.0, 1.0) * L;
    const int i = std::min(int(x), L - 1);
    const double w = x - i;
    return (1.0 - w) * y[i] + w * y[i + 1];
}

VectorXd rescaled_profile(const VectorXd& a, int grid_points) {
    const double N = double(a.size() - 1);
    VectorXd g(grid_points);
    for (int k = 0; k < grid_points; ++k) g[k] = N * interp_uniform(a, double(k) / (grid_points - 1));
    return g;
}

VectorXd even_cubic_map(const VectorXd& a) {
    const int N = int(a.size()) - 1;
    const VectorXd f = symmetric_extension(a);
    const VectorXd f3 = convolve(convolve(f, f), f);
    // f3 index 3N corresponds to n = 0.
    return f3.segment(3 * N, N + 1);
}

MatrixXd even_cubic_jacobian(const VectorXd& a) {
    const int N = int(a.size()) - 1;
    const VectorXd f = symmetric_extension(a);
    const VectorXd f2 = convolve(f, f);  // index 2N is offset 0
    auto ff = [&](int d) { return std::abs(d) <= 2 * N ? f2[d + 2 * N] : 0.0; };
    MatrixXd J(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) {
        J(n, 0) = 3.0 * ff(n);
        for (int l = 1; l <= N; ++l) J(n, l) = 3.0 * (ff(n - l) + ff(n + l));
    }
    return J;
}

VectorXd solve_even_matching(const VectorXd& seed, double tol) {
    VectorXd a = seed;
    const int n = int(a.size());
    double r = (a - even_cubic_map(a)).cwiseAbs().maxCoeff();
    for (int it = 0; it < 60 && r > tol; ++it) {
        const MatrixXd J = MatrixXd::Identity(n, n) - even_cubic_jacobian(a);
        const VectorXd d = J.partialPivLu().solve(-(a - even_cubic_map(a)));
        double lam = 1.0;
        for (;;) {
            const VectorXd t = a + lam * d;
            const double rt = (t - even_cubic_map(t)).cwiseAbs().maxCoeff();
            if (rt < r || lam < 1.0 / 64) {
                a = t;
                r = rt;
                break;
            }
            lam *= 0.5;
        }
    }
    if (!(r <= tol))
        throw NoConvergence("even matching Newton stopped at residual " + std::to_string(r) + " for N=" +
                            std::to_string(n - 1));
    return a;
}

std::vector<FamilyMember> large_n_family(const std::vector<int>& Ns) {
    VectorXd a(5);
    a << 0.15324452, 0.1498883, 0.14012286, 0.12482325, 0.10533671;
    a = solve_even_matching(a);
    std::vector<FamilyMember> out;
    for (int N : Ns) {
        if (N < 1) throw DomainError("family orders must be positive");
        const int Np = int(a.size()) - 1;
        VectorXd seed(N + 1);
        for (int n = 0; n <= N; ++n) seed[n] = Np * interp_uniform(a, double(n) / N) / N;
        a = solve_even_matching(seed);
        out.push_back({N, a, (a - even_cubic_map(a)).cwiseAbs().maxCoeff()});
    }
    return out;
}

ContinuumSolution solve_continuum(int M, const std::vector<double>& seed, double tol) {
    if (M < 32) throw DimensionMismatch("solve_continuum needs M >= 32, got " + std::to_string(M));
    VectorXd prof;
    if (seed.empty()) {
        const auto fam = large_n_family({5, 10, 20, 40});
        prof = rescaled_profile(fam.back().a, 401);
    } else {
        prof = Eigen::Map<const VectorXd>(seed.data(), Eigen::Index(seed.size()));
    }
    ContinuumSolution sol;
    sol.t_grid.resize(M);
    sol.alpha.resize(M);
    for (int k = 0; k < M; ++k) {
        sol.t_grid[k] = double(k) / (M - 1);
        sol.alpha[k] = interp_uniform(prof, sol.t_grid[k]);
    }
    VectorXd F = sol.alpha - continuum_apply(sol.alpha, M);
    double r = F.cwiseAbs().maxCoeff();
    int it = 0;
    for (; it < 40 && r > tol; ++it) {
        const MatrixXd J = MatrixXd::Identity(M, M) - continuum_jacobian(sol.alpha);
        const VectorXd d = J.partialPivLu().solve(-F);
        double lam = 1.0;
        for (;;) {
            const VectorXd t = sol.alpha + lam * d;
            const VectorXd Ft = t - continuum_apply(t, M);
            const double rt = Ft.cwiseAbs().maxCoeff();
            if (rt < r || lam < 1.0 / 64) {
                sol.alpha = t;
                F = Ft;
                r = rt;
                break;
            }
            lam *= 0.5;
        }
    }
    sol.residual_norm = r;
    sol.iterations = it;
    if (!(r <= tol))
        throw NoConvergence("continuum Newton stopped at residual " + std::to_string(r));
    return sol;
}

std::vector<DistanceRow> compare_large_N(const std::vector<FamilyMember>& members,
                                         const ContinuumSolution* cont, int grid_points) {
    std::vector<VectorXd> prof;
    for (const auto& mbr : members) prof.push_back(rescaled_profile(mbr.a, grid_points));
    std::vector<DistanceRow> rows;
    for (std::size_t i = 0; i + 1 < prof.size(); ++i)
        rows.push_back({members[i].N, members[i + 1].N, (prof[i] - prof[i + 1]).cwiseAbs().maxCoeff()});
    if (cont && cont->alpha.size() > 1) {
        VectorXd c(grid_points);
        for (int k = 0; k < grid_points; ++k) c[k] = interp_uniform(cont->alpha, double(k) / (grid_points - 1));
        for (std::size_t i = 0; i < prof.size(); ++i)
            rows.push_back({members[i].N, 0, (prof[i] - c).cwiseAbs().maxCoeff()});
    }
    return rows;
}

}  // namespace rings
