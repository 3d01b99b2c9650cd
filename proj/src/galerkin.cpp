#include "rings/galerkin.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SparseLU>

#include "rings/errors.hpp"

namespace rings {

namespace {

using Triplet = Eigen::Triplet<double>;

void check_state(const GalerkinGrid& g, const GalerkinState& s) {
    if (std::size_t(s.u.size()) != g.size())
        throw DimensionMismatch("state has " + std::to_string(s.u.size()) + " entries, grid expects " +
                                std::to_string(g.size()));
}

void add_block(std::vector<Triplet>& t, const GalerkinGrid& g, int n, int a, int i, const Mat2& B) {
    for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
            if (B(c, d) != 0.0) t.emplace_back(g.index(n, c, i), g.index(a, d, i), B(c, d));
}

}  // namespace

GalerkinGrid GalerkinGrid::make(double R_max, double h, int n_modes, int m) {
    if (!(R_max > 0.0) || !(h > 0.0) || n_modes < 1 || m < 1)
        throw DomainError("invalid Galerkin grid parameters");
    GalerkinGrid g;
    g.R_max = R_max;
    g.M = int(std::lround(R_max / h));
    g.h = R_max / g.M;
    g.n_modes = n_modes;
    g.m = m;
    g.r.resize(g.M);
    for (int i = 0; i < g.M; ++i) g.r[i] = (i + 0.5) * g.h;
    return g;
}

GalerkinState zero_state(const GalerkinGrid& grid, double mu) {
    GalerkinState s;
    s.u = VectorXd::Zero(Eigen::Index(grid.size()));
    s.mu = mu;
    return s;
}

VectorXd residual(const RDSystem& sys, const GalerkinGrid& g, const GalerkinState& st, bool nonlinear) {
    check_state(g, st);
    const int M = g.M, K = g.n_modes - 1;
    const double h = g.h, h2 = h * h;
    const Mat2 A = sys.M1 + st.mu * sys.M2;
    VectorXd F(st.u.size());
    std::vector<Vec2> u(K + 1);
    for (int i = 0; i < M; ++i) {
        const double r = g.r[i];
        for (int n = 0; n <= K; ++n) u[n] = st.at(g, n, i);
        for (int n = 0; n <= K; ++n) {
            const double mn2 = double(g.m * n) * double(g.m * n);
            const double parity = n == 0 ? 1.0 : -1.0;
            Vec2 lap;
            for (int c = 0; c < 2; ++c) {
                const double v = u[n][c];
                const double vm = i == 0 ? parity * v : st.u[g.index(n, c, i - 1)];
                const double vp = i == M - 1 ? -v : st.u[g.index(n, c, i + 1)];
                lap[c] = (vp - 2.0 * v + vm) / h2 + (vp - vm) / (2.0 * h * r) - mn2 / (r * r) * v;
            }
            Vec2 f = lap - A * u[n];
            if (nonlinear) {
                for (int p = -K; p <= K; ++p) {
                    const int q = n - p;
                    if (std::abs(q) <= K) f -= sys.quad(u[std::abs(p)], u[std::abs(q)]);
                    for (int q2 = -K; q2 <= K; ++q2) {
                        const int s = n - p - q2;
                        if (std::abs(s) <= K) f -= sys.cubic(u[std::abs(p)], u[std::abs(q2)], u[std::abs(s)]);
                    }
                }
            }
            F[g.index(n, 0, i)] = f[0];
            F[g.index(n, 1, i)] = f[1];
        }
    }
    return F;
}

SparseMatrix residual_jacobian(const RDSystem& sys, const GalerkinGrid& g, const GalerkinState& st,
                               bool nonlinear) {
    check_state(g, st);
    const int M = g.M, K = g.n_modes - 1;
    const double h = g.h, h2 = h * h;
    const Mat2 A = sys.M1 + st.mu * sys.M2;
    std::vector<Triplet> t;
    t.reserve(std::size_t(g.size()) * (6 + (nonlinear ? 4 * (2 * K + 1) * (2 * K + 1) : 0)));
    std::vector<Vec2> u(K + 1);
    for (int i = 0; i < M; ++i) {
        const double r = g.r[i];
        for (int n = 0; n <= K; ++n) u[n] = st.at(g, n, i);
        for (int n = 0; n <= K; ++n) {
            const double mn2 = double(g.m * n) * double(g.m * n);
            const double parity = n == 0 ? 1.0 : -1.0;
            const double lo = 1.0 / h2 - 1.0 / (2.0 * h * r);
            const double up = 1.0 / h2 + 1.0 / (2.0 * h * r);
            double diag = -2.0 / h2 - mn2 / (r * r);
            if (i == 0) diag += parity * lo;
            if (i == M - 1) diag -= up;
            for (int c = 0; c < 2; ++c) {
                const int row = g.index(n, c, i);
                t.emplace_back(row, row, diag);
                if (i > 0) t.emplace_back(row, g.index(n, c, i - 1), lo);
                if (i < M - 1) t.emplace_back(row, g.index(n, c, i + 1), up);
            }
            add_block(t, g, n, n, i, -A);
            if (!nonlinear) continue;
            for (int p = -K; p <= K; ++p) {
                const int a = std::abs(p);
                const int q = n - p;
                if (std::abs(q) <= K) {
                    const int b = std::abs(q);
                    add_block(t, g, n, a, i, -sys.quad_jacobian(u[b]));
                    add_block(t, g, n, b, i, -sys.quad_jacobian(u[a]));
                }
                for (int q2 = -K; q2 <= K; ++q2) {
                    const int s = n - p - q2;
                    if (std::abs(s) > K) continue;
                    const int b = std::abs(q2), c3 = std::abs(s);
                    add_block(t, g, n, a, i, -sys.cubic_jacobian(u[b], u[c3]));
                    add_block(t, g, n, b, i, -sys.cubic_jacobian(u[a], u[c3]));
                    add_block(t, g, n, c3, i, -sys.cubic_jacobian(u[a], u[b]));
                }
            }
        }
    }
    SparseMatrix J(Eigen::Index(g.size()), Eigen::Index(g.size()));
    J.setFromTriplets(t.begin(), t.end());
    return J;
}

GalerkinState newton_refine(const RDSystem& sys, const GalerkinGrid& grid, const GalerkinState& seed,
                            double tol, NewtonReport* report, int max_iter) {
    check_state(grid, seed);
    NewtonReport local;
    NewtonReport& rep = report ? *report : local;
    rep = NewtonReport{};

    GalerkinState st = seed;
    VectorXd F = residual(sys, grid, st);
    double r = F.cwiseAbs().maxCoeff();
    rep.residual_history.push_back(r);

    auto finish = [&]() {
        const double sn = seed.u.norm();
        rep.relative_correction = sn > 0.0 ? (st.u - seed.u).norm() / sn : st.u.norm();
        const auto& h = rep.residual_history;
        rep.quadratic_constant = 0.0;
        rep.quadratic_pairs = 0;
        for (std::size_t k = 0; k + 1 < h.size(); ++k) {
            if (h[k] <= 1e-12 || h[k] >= 1e-2 || h[k + 1] <= 1e-15) continue;
            rep.quadratic_constant = std::max(rep.quadratic_constant, h[k + 1] / (h[k] * h[k]));
            ++rep.quadratic_pairs;
        }
        st.residual_norm = r;
    };

    for (int it = 0; it < max_iter && r > tol; ++it) {
        Eigen::SparseLU<SparseMatrix> lu;
        lu.compute(residual_jacobian(sys, grid, st));
        if (lu.info() != Eigen::Success) {
            finish();
            throw SingularJacobian("sparse LU failed at Newton step " + std::to_string(it));
        }
        const VectorXd d = lu.solve(-F);
        if (!d.allFinite()) {
            finish();
            throw SingularJacobian("non-finite Newton step");
        }
        double lam = 1.0;
        GalerkinState trial = st;
        VectorXd Ft;
        double rt = 0.0;
        for (;;) {
            trial.u = st.u + lam * d;
            Ft = residual(sys, grid, trial);
            rt = Ft.cwiseAbs().maxCoeff();
            if (rt < (1.0 - 1e-4 * lam) * r || lam < 1e-3) break;
            lam *= 0.5;
        }
        st = trial;
        F = Ft;
        r = rt;
        rep.iterations = it + 1;
        rep.residual_history.push_back(r);
    }
    rep.converged = r <= tol;
    finish();
    if (!rep.converged)
        throw NoConvergence("Galerkin Newton stopped at residual " + std::to_string(r) + " after " +
                            std::to_string(rep.iterations) + " steps");
    return st;
}

GalerkinState seed_from_profile(const ProfileContext& ctx, const GalerkinGrid& grid) {
    if (grid.n_modes < ctx.N + 1) throw DimensionMismatch("grid carries fewer modes than the profile");
    if (grid.m != ctx.m) throw DimensionMismatch("grid and profile disagree on m");
    GalerkinState s = zero_state(grid, ctx.mu);
    for (int i = 0; i < grid.M; ++i) {
        const auto u = radial_amplitudes(ctx, grid.r[i]);
        for (int n = 0; n <= ctx.N; ++n)
            for (int c = 0; c < 2; ++c) s.u[grid.index(n, c, i)] = u[n][c];
    }
    return s;
}

double weighted_l2(const GalerkinGrid& grid, const VectorXd& v) {
    if (std::size_t(v.size()) != grid.size()) throw DimensionMismatch("vector does not match the grid");
    double total = 0.0;
    for (int n = 0; n < grid.n_modes; ++n) {
        const double w = n == 0 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
        double acc = 0.0;
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < grid.M; ++i) {
                const double x = v[grid.index(n, c, i)];
                acc += grid.h * grid.r[i] * x * x;
            }
        total += w * acc;
    }
    return std::sqrt(total);
}

double l2_norm(const GalerkinGrid& grid, const GalerkinState& st) {
    check_state(grid, st);
    return weighted_l2(grid, st.u);
}

double loglog_slope(const std::vector<BranchPoint>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& p : pts) {
        if (!p.converged || !(p.l2 > 0.0)) continue;
        const double x = std::log(p.mu), y = std::log(p.l2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BranchResult continue_mu(const RDSystem& sys, const GalerkinGrid& grid, const GalerkinState& start,
                         double mu_end, int steps, double tol) {
    check_state(grid, start);
    if (!(mu_end > 0.0) || !(start.mu > 0.0) || steps < 1) throw DomainError("invalid continuation range");
    BranchResult res;
    GalerkinState cur = newton_refine(sys, grid, start, tol);
    res.points.push_back({cur.mu, l2_norm(grid, cur), true});

    GalerkinState prev;
    bool have_prev = false;
    const double ratio = std::log(mu_end / start.mu) / steps;
    for (int k = 1; k <= steps; ++k) {
        const double mu = start.mu * std::exp(ratio * k);
        GalerkinState pred = cur;
        pred.mu = mu;
        if (have_prev) {
            const double t = std::log(mu / cur.mu) / std::log(cur.mu / prev.mu);
            pred.u = cur.u + t * (cur.u - prev.u);
        }
        bool ok = true;
        GalerkinState next;
        try {
            next = newton_refine(sys, grid, pred, tol);
            if (next.u.norm() < 1e-3 * cur.u.norm()) ok = false;
        } catch (const NoConvergence&) {
            ok = false;
        } catch (const SingularJacobian&) {
            ok = false;
        }
        if (!ok) {
            res.points.push_back({mu, 0.0, false});
            res.halted = true;
            res.fold_lo = std::min(cur.mu, mu);
            res.fold_hi = std::max(cur.mu, mu);
            break;
        }
        prev = cur;
        have_prev = true;
        cur = next;
        res.points.push_back({mu, l2_norm(grid, cur), true});
    }
    res.slope = loglog_slope(res.points);
    return res;
}

}  // namespace rings
