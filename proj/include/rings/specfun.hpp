#pragma once

#include <vector>

namespace rings {

// Value and r-derivative of a Bessel function.
struct BesselEval {
    double value = 0.0;
    double derivative = 0.0;
};

// Integer-order Bessel functions of the first and second kind.
// Validity envelope: order <= 200, 0 <= r <= 1e4.
BesselEval bessel_j(int order, double r);
BesselEval bessel_y(int order, double r);

// J_0(x), ..., J_nmax(x) from one evaluation.
std::vector<double> bessel_j_sequence(int nmax, double x);

}  // namespace rings
