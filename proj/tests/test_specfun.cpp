#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rings/errors.hpp"
#include "rings/specfun.hpp"

using namespace rings;

namespace {

// Independent oracle: ascending series in long double.
long double series_j(int n, long double x) {
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= x / (2.0L * k);
    long double sum = term;
    const long double q = -x * x / 4.0L;
    for (int k = 1; k < 400; ++k) {
        term *= q / (k * (long double)(k + n));
        sum += term;
        if (std::fabs(term) < 1e-30L * std::fabs(sum) && k > x) break;
    }
    return sum;
}

template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("values at the origin") {
    CHECK(bessel_j(0, 0.0).value == 1.0);
    CHECK(bessel_j(0, 0.0).derivative == 0.0);
    CHECK(bessel_j(1, 0.0).value == 0.0);
    CHECK(bessel_j(1, 0.0).derivative == doctest::Approx(0.5));
    CHECK(bessel_j(5, 0.0).value == 0.0);
}

TEST_CASE("J matches the ascending series oracle") {
    for (int n : {0, 1, 2, 5, 10})
        for (double r = 0.0; r <= 20.0; r += 0.37) CHECK(std::abs(bessel_j(n, r).value - double(series_j(n, r))) < 1e-12);
}

TEST_CASE("J matches the standard library on the usage envelope") {
    for (int n = 0; n <= 41; ++n)
        for (double r = 0.05; r <= 100.0; r += 0.731) {
            const double ref = std::cyl_bessel_j(double(n), r);
            CHECK(std::abs(bessel_j(n, r).value - ref) < 1e-12);
        }
    for (int n : {100, 200})
        for (double r : {1.0, 150.0, 250.0, 1000.0, 1e4})
            CHECK(std::abs(bessel_j(n, r).value - std::cyl_bessel_j(double(n), r)) < 1e-12);
}

TEST_CASE("sequence agrees with single evaluations") {
    for (double x : {0.3, 7.5, 12.0, 31.0, 80.0}) {
        const auto seq = bessel_j_sequence(30, x);
        REQUIRE(seq.size() == 31);
        for (int n = 0; n <= 30; ++n) CHECK(std::abs(seq[n] - bessel_j(n, x).value) < 1e-14);
    }
}

TEST_CASE("derivative follows the recurrence") {
    for (int n = 1; n <= 12; ++n)
        for (double r = 0.5; r < 60.0; r += 1.3) {
            const double d = 0.5 * (bessel_j(n - 1, r).value - bessel_j(n + 1, r).value);
            CHECK(std::abs(bessel_j(n, r).derivative - d) < 1e-13);
        }
    for (double r = 0.5; r < 60.0; r += 1.3) CHECK(std::abs(bessel_j(0, r).derivative + bessel_j(1, r).value) < 1e-14);
}

TEST_CASE("three-term recurrence") {
    for (int n = 1; n <= 20; ++n)
        for (double r = 1.0; r <= 50.0; r += 0.49) {
            const double lhs = bessel_j(n + 1, r).value;
            const double rhs = 2.0 * n / r * bessel_j(n, r).value - bessel_j(n - 1, r).value;
            const double scale = std::max({std::abs(bessel_j(n - 1, r).value), std::abs(lhs), 1e-300});
            CHECK(std::abs(lhs - rhs) <= 1e-10 * scale + 1e-15);
        }
}

TEST_CASE("Wronskian identity") {
    for (int n = 0; n <= 20; ++n)
        for (double r = 0.2; r <= 120.0; r *= 1.17) {
            const auto j = bessel_j(n, r);
            const auto y = bessel_y(n, r);
            const double w = j.value * y.derivative - j.derivative * y.value;
            const double ref = 2.0 / (std::numbers::pi * r);
            CHECK(std::abs(w - ref) <= 1e-10 * ref);
        }
}

TEST_CASE("Y matches the standard library") {
    for (int n : {0, 1, 2, 7, 15})
        for (double r = 0.5; r <= 100.0; r += 1.91) {
            const double ref = std::cyl_neumann(double(n), r);
            CHECK(std::abs(bessel_y(n, r).value - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("Y0 diverges monotonically at the origin") {
    double prev = bessel_y(0, 0.8).value;
    for (double r = 0.4; r > 1e-8; r *= 0.5) {
        const double v = bessel_y(0, r).value;
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < -10.0);
}

TEST_CASE("first zeros of J0 and Y0") {
    const double j0 = bisect([](double r) { return bessel_j(0, r).value; }, 2.0, 3.0);
    CHECK(std::abs(j0 - 2.404825557695773) < 1e-10);
    CHECK(std::abs(bessel_j(0, 2.404825557695773).value) < 1e-12);
    const double y0 = bisect([](double r) { return bessel_y(0, r).value; }, 0.5, 1.5);
    CHECK(std::abs(y0 - 0.8935769662791675) < 1e-10);
    CHECK(std::abs(bessel_y(0, 0.8935769662791675).value) < 1e-12);
}

TEST_CASE("large-argument asymptotics") {
    for (int n : {0, 3, 10}) {
        double K = 0.0;
        for (double r = 50.0; r <= 500.0; r += 0.77) {
            const double lead = std::sqrt(2.0 / (std::numbers::pi * r)) *
                                std::cos(r - n * std::numbers::pi / 2.0 - std::numbers::pi / 4.0);
            K = std::max(K, std::abs(bessel_j(n, r).value - lead) * std::pow(r, 1.5));
        }
        CHECK(K < 0.5 * (4.0 * n * n + 1.0));
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j(0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(-1, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_y(0, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_y(2, -1.0), DomainError);
}
