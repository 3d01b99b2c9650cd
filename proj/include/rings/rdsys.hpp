#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace rings {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Taylor data of a two-component reaction-diffusion system at the Turing point.
// Steady states solve
//     0 = Lap u - M1 u - mu M2 u - Q(u,u) - C(u,u,u),
// and every stored tensor follows that sign.
//
// Q(u,v)_c = u^T Q[c] v, C(u,v,w)_c = sum_ijk C[c][i](j,k) u_i v_j w_k.
struct RDSystem {
    Mat2 M1 = Mat2::Zero();
    Mat2 M2 = Mat2::Zero();
    std::array<Mat2, 2> Q{Mat2::Zero(), Mat2::Zero()};
    std::array<std::array<Mat2, 2>, 2> C{};
    std::string label;

    RDSystem();

    // Averages Q over its two slots and C over all six argument orders.
    void symmetrize();

    Vec2 quad(const Vec2& u, const Vec2& v) const;
    Vec2 cubic(const Vec2& u, const Vec2& v, const Vec2& w) const;
    // d/du Q(u, v) as a 2x2 matrix acting on u.
    Mat2 quad_jacobian(const Vec2& v) const;
    // d/du C(u, v, w) as a 2x2 matrix acting on u.
    Mat2 cubic_jacobian(const Vec2& v, const Vec2& w) const;
};

struct TuringData {
    double kc = 1.0;
    Vec2 U0, U1;    // generalized eigenvector chain of M1 at -kc^2
    Vec2 U0s, U1s;  // biorthogonal adjoint vectors
};

struct BifCoefficients {
    double c0 = 0.0;
    double c3 = 0.0;
    double nu = 0.0;
};

// Swift-Hohenberg  0 = -(1+Lap)^2 u - mu u + gamma u^2 - u^3  written for
// (u, (1+Lap)u):
//     M1 = [[-1, 1], [0, -1]],  M2 = [[0, 0], [-1, 0]],
//     Q(u,v) = (0, gamma u_0 v_0),  C(u,v,w) = (0, -u_0 v_0 w_0).
RDSystem sh_system(double gamma);

TuringData verify_turing(const RDSystem& sys);
BifCoefficients coefficients(const RDSystem& sys);
BifCoefficients coefficients(const RDSystem& sys, const TuringData& td);
bool check_subcriticality(const RDSystem& sys);

// Closed form of c3 for the Swift-Hohenberg system.
inline double sh_c3(double gamma) { return 0.75 - 19.0 * gamma * gamma / 18.0; }

// Reads key=value lines (M1, M2, Q0, Q1, C0, C1, label) or the one-line
// shorthand "sh gamma=<value>". Throws ParseError with a line diagnostic.
RDSystem parse_system(std::istream& in);
RDSystem load_system(const std::string& path);

}  // namespace rings
