#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace rings {

// Radial Ginzburg-Landau equation
//     (d/ds + 1/(2s))^2 q = c0 q + c3 q^3,
// i.e. q'' + q'/s - q/(4 s^2) = c0 q + c3 q^3, integrated as the first-order
// system in (q, w) with w = dq = (d/ds + 1/(2s)) q:
//     q' = -q/(2s) + w,   w' = -w/(2s) + c0 q + c3 q^3.
// Near s = 0 the regular solution is q0 s^(1/2) + (c0 q0/6) s^(5/2) + (c3 q0^3/12) s^(7/2).
// Its linear tail is exactly q+ s^(-1/2) exp(-sqrt(c0) s) with w = -sqrt(c0) q.

struct GLOptions {
    double s_min = 1e-3;
    double s_max_factor = 30.0;  // s_max = s_max_factor / sqrt(c0)
    double rtol = 1e-10;
    double atol = 1e-12;
    double bisect_width = 1e-12;
    double sample_step = 0.01;  // grid spacing in units of 1/sqrt(c0)
};

// Shooting exit classes. Below the homoclinic value the orbit is trapped in
// the positive well and turns back up without reaching zero; above it the
// orbit overshoots and crosses zero.
enum class ShootExit { GrowsPositive, CrossesZero, Decayed };

const char* to_string(ShootExit e);

struct ShootResult {
    ShootExit exit = ShootExit::Decayed;
    double s_exit = 0.0;
};

ShootResult shoot(double c0, double c3, double q0_trial, double s_max, const GLOptions& opts = {});

struct GLSolution {
    double c0 = 0.0, c3 = 0.0;
    double q0 = 0.0;
    double q_plus = 0.0;      // least-squares tail amplitude
    double tail_slope = 0.0;  // unconstrained fit of d/ds log(q sqrt(s)) on the same window
    double q0_bisection = 0.0;
    double s_min = 0.0, s_max = 0.0, s_match = 0.0;
    double ds = 0.0;
    std::vector<double> s_grid, q_samples, dq_samples;
    // Tail amplitude used past s_max so that evaluate() is continuous there.
    double q_plus_match = 0.0;
};

// Bisects q0 between the two exit classes, then refines (q0, q+) by matching
// a forward orbit from s_min with a backward orbit from the exact linear tail
// at s_match = 4/sqrt(c0). A single forward orbit cannot follow the homoclinic
// to s_max in double precision.
GLSolution find_homoclinic(double c0, double c3, const GLOptions& opts = {});

// (q, dq) at s > 0: series below s_min, Hermite interpolation on the grid,
// linear tail beyond s_max.
std::pair<double, double> evaluate(const GLSolution& sol, double s);

// q0(c0, c3) = (c0/|c3|)^(1/2) c0^(1/4) q0(1, -1).
inline double scaled_q0(double c0, double c3, double q0_canonical) {
    return std::sqrt(c0 / std::abs(c3)) * std::pow(c0, 0.25) * q0_canonical;
}

}  // namespace rings
