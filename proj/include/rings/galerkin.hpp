#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "rings/profile.hpp"
#include "rings/rdsys.hpp"

namespace rings {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Cell-centred radial grid r_i = (i + 1/2) h, i = 0..M-1, with M h = R_max.
// Ghost values: u_{-1} = +u_0 for mode 0 and -u_0 for modes n >= 1;
// Dirichlet u_M = -u_{M-1}.
struct GalerkinGrid {
    double R_max = 100.0;
    double h = 0.05;
    int M = 0;
    int n_modes = 1;
    int m = 1;
    std::vector<double> r;

    static GalerkinGrid make(double R_max, double h, int n_modes, int m);
    std::size_t size() const { return std::size_t(2 * n_modes * M); }
    int index(int n, int c, int i) const { return (n * 2 + c) * M + i; }
    // The far-field tail has decayed inside the domain: R_max >= 4 mu^(-1/2).
    bool covers(double mu) const { return R_max * R_max * mu >= 16.0; }
};

struct GalerkinState {
    VectorXd u;  // stacked (mode, component, node)
    double mu = 0.0;
    double residual_norm = 0.0;

    Vec2 at(const GalerkinGrid& g, int n, int i) const {
        return Vec2(u[g.index(n, 0, i)], u[g.index(n, 1, i)]);
    }
};

GalerkinState zero_state(const GalerkinGrid& grid, double mu);

// Lap_n u_n - M1 u_n - mu M2 u_n - sum_{i+j=n} Q(u_|i|, u_|j|) - sum_{i+j+k=n} C(...)
// at every node, with Lap_n = d_rr + d_r / r - (m n)^2 / r^2 by central differences.
VectorXd residual(const RDSystem& sys, const GalerkinGrid& grid, const GalerkinState& state,
                  bool nonlinear = true);
SparseMatrix residual_jacobian(const RDSystem& sys, const GalerkinGrid& grid, const GalerkinState& state,
                               bool nonlinear = true);

struct NewtonReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;  // sup norm before each step and at exit
    double relative_correction = 0.0;      // |u - seed|_2 / |seed|_2
    // max r_{k+1} / r_k^2 over steps with r_k in (1e-12, 1e-2); 0 if none.
    double quadratic_constant = 0.0;
    int quadratic_pairs = 0;
};

// Damped Newton with sparse LU. Throws NoConvergence after max_iter steps and
// SingularJacobian if factorization fails; `report` is filled in either case.
GalerkinState newton_refine(const RDSystem& sys, const GalerkinGrid& grid, const GalerkinState& seed,
                            double tol = 1e-9, NewtonReport* report = nullptr, int max_iter = 40);

// Samples the profile amplitudes onto the nodes; modes beyond ctx.N stay zero.
GalerkinState seed_from_profile(const ProfileContext& ctx, const GalerkinGrid& grid);

// sqrt(sum_n w_n int |u_n|^2 r dr) with w_0 = 2 pi, w_n = 4 pi and midpoint
// weights h r_i, which reproduces the planar L2 norm of u_0 + 2 sum u_n cos(m n theta).
double l2_norm(const GalerkinGrid& grid, const GalerkinState& state);
// Same weights applied to a residual vector.
double weighted_l2(const GalerkinGrid& grid, const VectorXd& v);

struct BranchPoint {
    double mu = 0.0;
    double l2 = 0.0;
    bool converged = false;
};

struct BranchResult {
    std::vector<BranchPoint> points;
    bool halted = false;
    double fold_lo = 0.0, fold_hi = 0.0;  // bracket around the failed step
    double slope = 0.0;                   // least-squares d log L2 / d log mu
};

// Natural-parameter continuation with geometric mu steps from start.mu to
// mu_end, secant predictor in log mu and Newton corrector. Halts at the
// first corrector failure or collapse onto the trivial state.
BranchResult continue_mu(const RDSystem& sys, const GalerkinGrid& grid, const GalerkinState& start,
                         double mu_end, int steps, double tol = 1e-9);

double loglog_slope(const std::vector<BranchPoint>& pts);

}  // namespace rings
