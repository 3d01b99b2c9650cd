#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace rings {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct MatchProblem {
    int m = 1;  // dihedral order
    int N = 0;  // truncation order
};

// D_m = 2 + (-1)^m.
inline int dm_constant(int m) { return m % 2 == 0 ? 3 : 1; }

struct MatchSolution {
    VectorXd a;
    double residual_norm = 0.0;
    std::optional<int> harmonic_of;  // smallest k with a = H^k[b]
    bool dm_minus = false;           // all even-index entries vanish
    bool canonical = false;
    // Smallest singular value of I - DC(a); near zero on root continua.
    double sigma_min = 0.0;
    bool degenerate = false;
    // D_m^- roots at even N are the N-1 roots with a zero appended.
    bool inherited = false;

    // Isolated roots that are new at this (m, N): not harmonic, not on a
    // continuum, not carried over from N-1.
    bool primary() const { return !harmonic_of && !degenerate && !inherited; }
};

// C^m_N as a list of aggregated monomials c * a_i a_j a_k, i <= j <= k.
class CubicMap {
public:
    explicit CubicMap(const MatchProblem& p);

    const MatchProblem& problem() const { return p_; }
    VectorXd operator()(const VectorXd& a) const;
    MatrixXd jacobian(const VectorXd& a) const;

private:
    struct Term {
        int n, i, j, k;
        double c;
    };
    MatchProblem p_;
    std::vector<Term> terms_;
    void check(const VectorXd& a) const;
};

VectorXd cubic_map(const MatchProblem& p, const VectorXd& a);
MatrixXd jacobian(const MatchProblem& p, const VectorXd& a);

// Lexicographically greatest member of {a, Ra, Sa, RSa} where
// R: a_n -> (-1)^n a_n and S: a_n -> -a_n.
VectorXd canonicalize(const VectorXd& a);

// Places a_i at index i*k of a length N+1 vector.
VectorXd harmonic_lift(const VectorXd& a, int k, int N);

MatchSolution classify(MatchSolution sol, const MatchProblem& p);

struct SolveOptions {
    int starts = -1;  // -1 selects 500 (N+1)^2
    std::uint64_t seed = 1;
    double tol = 1e-12;
    int threads = 0;  // 0 selects hardware concurrency
    bool seed_from_lower = true;
};

// Damped Newton on F(a) = a - C(a). Returns the root if the residual drops
// below tol within 60 iterations.
std::optional<VectorXd> newton_match(const CubicMap& C, VectorXd a, double tol = 1e-12,
                                     int max_iter = 60);

// Canonical, deduplicated nonzero roots found by multi-start Newton, sorted
// lexicographically. Completeness is not guaranteed.
std::vector<MatchSolution> solve_matching(const MatchProblem& p, const SolveOptions& opts = {});

std::size_t count_primary(const std::vector<MatchSolution>& sols);

}  // namespace rings
