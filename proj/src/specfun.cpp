#include "rings/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rings/errors.hpp"

namespace rings {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kSeriesMax = 8.0;
constexpr double kAsymptoticMin = 30.0;

void check_envelope(int order, double r) {
    if (order < 0) throw DomainError("Bessel order must be nonnegative");
    if (!(r >= 0.0)) throw DomainError("Bessel argument must be nonnegative, got " + std::to_string(r));
}

// Ascending series with the (x/2)^n / n! prefactor taken in log space.
double series_j(int n, double x) {
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const double lead = n * std::log(0.5 * x) - std::lgamma(n + 1.0);
    if (lead < -745.0) return 0.0;
    const double z = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= -z / (k * double(n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(lead) * sum;
}

// Hankel expansion of J_n and Y_n for large x.
void hankel(int n, double x, double& J, double& Y) {
    const double mu = 4.0 * n * n;
    double P = 1.0, Q = 0.0, a = 1.0, prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(a) > std::abs(prev) && k > 2) break;
        const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1)
            Q += sgn * a;
        else
            P += sgn * a;
        if (std::abs(a) < 1e-17) break;
        prev = a;
    }
    // chi = x - phi with phi = (n/2 + 1/4) pi reduced by the period.
    const double phi = (0.5 * (n % 4) + 0.25) * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double cchi = cx * cphi + sx * sphi;
    const double schi = sx * cphi - cx * sphi;
    const double amp = std::sqrt(2.0 / (kPi * x));
    J = amp * (P * cchi - Q * schi);
    Y = amp * (P * schi + Q * cchi);
}

// Miller backward recurrence normalized by J_0 + 2 sum J_2k = 1.
// Returns J_0..J_top where top >= nmax is the starting index.
std::vector<double> miller(int nmax, double x) {
    const double big = std::max<double>(nmax, x);
    int top = int(big + 20.0 + std::sqrt(40.0 * big));
    if (top % 2) ++top;
    std::vector<double> j(top + 2, 0.0);
    j[top + 1] = 0.0;
    j[top] = 1e-30;
    for (int k = top; k >= 1; --k) {
        j[k - 1] = 2.0 * k / x * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > 1e250) {
            for (int i = k - 1; i <= top; ++i) j[i] *= 1e-250;
        }
    }
    double norm = j[0];
    for (int k = 2; k <= top; k += 2) norm += 2.0 * j[k];
    for (auto& v : j) v /= norm;
    j.pop_back();
    return j;
}

// Y_0 and Y_1 for x > 0.
void y01(double x, double& Y0, double& Y1) {
    if (x >= kAsymptoticMin) {
        double J;
        hankel(0, x, J, Y0);
        hankel(1, x, J, Y1);
        return;
    }
    const std::vector<double> j = miller(1, x);
    const int top = int(j.size()) - 1;
    const double L = std::log(0.5 * x) + kEulerGamma;
    double s0 = 0.0, s1 = 0.0;
    for (int k = 1; 2 * k + 1 <= top; ++k) {
        const double sgn = (k % 2) ? -1.0 : 1.0;
        s0 += sgn * j[2 * k] / k;
        s1 += sgn * (j[2 * k - 1] - j[2 * k + 1]) / k;
    }
    Y0 = 2.0 / kPi * (L * j[0] - 2.0 * s0);
    Y1 = -2.0 / kPi * (j[0] / x - L * j[1] - s1);
}

}  // namespace

std::vector<double> bessel_j_sequence(int nmax, double x) {
    check_envelope(nmax, x);
    std::vector<double> out(nmax + 1, 0.0);
    if (x <= kSeriesMax) {
        for (int n = 0; n <= nmax; ++n) out[n] = series_j(n, x);
        return out;
    }
    int forward_top = -1;
    if (x >= kAsymptoticMin) {
        // Upward recurrence is stable while n < x.
        double Y;
        hankel(0, x, out[0], Y);
        if (nmax >= 1) hankel(1, x, out[1], Y);
        forward_top = std::min(nmax, int(x));
        for (int n = 1; n < forward_top; ++n) out[n + 1] = 2.0 * n / x * out[n] - out[n - 1];
        if (forward_top == nmax) return out;
    }
    const std::vector<double> j = miller(nmax, x);
    for (int n = forward_top + 1; n <= nmax; ++n) out[n] = j[n];
    return out;
}

BesselEval bessel_j(int order, double r) {
    check_envelope(order, r);
    const std::vector<double> j = bessel_j_sequence(order + 1, r);
    BesselEval e;
    e.value = j[order];
    e.derivative = order == 0 ? -j[1] : 0.5 * (j[order - 1] - j[order + 1]);
    return e;
}

BesselEval bessel_y(int order, double r) {
    check_envelope(order, r);
    if (r <= 0.0) throw DomainError("Y_n requires r > 0");
    double y0, y1;
    y01(r, y0, y1);
    double prev = y0, cur = y1;
    if (order == 0) return {y0, -y1};
    for (int n = 1; n < order; ++n) {
        const double next = 2.0 * n / r * cur - prev;
        prev = cur;
        cur = next;
    }
    const double next = 2.0 * order / r * cur - prev;
    return {cur, 0.5 * (prev - next)};
}

}  // namespace rings
