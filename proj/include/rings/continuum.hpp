#pragma once

#include <vector>

#include <Eigen/Dense>

namespace rings {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ContinuumSolution {
    std::vector<double> t_grid;  // t_k = k / (M - 1)
    VectorXd alpha;
    double residual_norm = 0.0;
    int iterations = 0;
};

// Right-hand side of alpha = A(alpha) at t_k = k / (M - 1). Seven nested
// trapezoid integrals over the exact (clamped) domains; zero-width ranges
// contribute 0. Throws DimensionMismatch if alpha.size() != M or M < 8.
VectorXd continuum_apply(const VectorXd& alpha, int M);
// Exact Jacobian of continuum_apply, obtained by polarization of the cubic.
MatrixXd continuum_jacobian(const VectorXd& alpha);

// Newton on alpha - A(alpha), seeded by interpolating `seed` (samples on a
// uniform grid of [0,1]) or, if empty, the rescaled large-N discrete family.
// Requires M >= 32; throws NoConvergence if the sup residual stays above tol.
ContinuumSolution solve_continuum(int M, const std::vector<double>& seed = {}, double tol = 1e-9);

// Even-m discrete matching map: C_n = (f * f * f)_n, f the symmetric
// extension (a_N, ..., a_1, a_0, a_1, ..., a_N).
VectorXd even_cubic_map(const VectorXd& a);
MatrixXd even_cubic_jacobian(const VectorXd& a);
// Newton on a - C(a); throws NoConvergence.
VectorXd solve_even_matching(const VectorXd& seed, double tol = 1e-13);

struct FamilyMember {
    int N = 0;
    VectorXd a;
    double residual_norm = 0.0;
};

// The all-positive even-m family continued from the N = 4 root; each new N
// is seeded by interpolating the previous rescaled profile (n/N, N a_n).
std::vector<FamilyMember> large_n_family(const std::vector<int>& Ns = {5, 10, 20, 40, 80});

struct DistanceRow {
    int N1 = 0, N2 = 0;  // N2 == 0 marks the distance to the continuum solution
    double sup_distance = 0.0;
};

// Rescales members to (n/N, N a_n), interpolates linearly onto a common
// uniform grid of `grid_points`, and reports consecutive pairwise sup
// distances followed by each member's distance to `cont` (if non-empty).
std::vector<DistanceRow> compare_large_N(const std::vector<FamilyMember>& members,
                                         const ContinuumSolution* cont = nullptr, int grid_points = 401);

// Piecewise-linear interpolant of samples on a uniform grid of [0,1].
double interp_uniform(const VectorXd& y, double t);
VectorXd rescaled_profile(const VectorXd& a, int grid_points);

}  // namespace rings
