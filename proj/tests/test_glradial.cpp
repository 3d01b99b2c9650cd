#include <doctest.h>

#include <cmath>

#include "rings/errors.hpp"
#include "rings/glradial.hpp"

using namespace rings;

namespace {

const GLSolution& canonical() {
    static const GLSolution sol = find_homoclinic(1.0, -1.0);
    return sol;
}

}  // namespace

TEST_CASE("exit classes on either side of the homoclinic") {
    const double q0 = canonical().q0;
    CHECK(shoot(1.0, -1.0, 1e-6, 30.0).exit == ShootExit::GrowsPositive);
    CHECK(shoot(1.0, -1.0, 0.5 * q0, 30.0).exit == ShootExit::GrowsPositive);
    CHECK(shoot(1.0, -1.0, 1.5 * q0, 30.0).exit == ShootExit::CrossesZero);
    CHECK(shoot(1.0, -1.0, 4.0, 30.0).exit == ShootExit::CrossesZero);
    CHECK(shoot(1.0, -1.0, q0 - 1e-6, 30.0).exit == ShootExit::GrowsPositive);
    CHECK(shoot(1.0, -1.0, q0 + 1e-6, 30.0).exit == ShootExit::CrossesZero);
}

TEST_CASE("invalid shooting input") {
    CHECK_THROWS_AS(shoot(0.0, -1.0, 1.0, 30.0), DomainError);
    CHECK_THROWS_AS(shoot(1.0, -1.0, -1.0, 30.0), DomainError);
}

TEST_CASE("supercritical and degenerate coefficients are rejected") {
    CHECK_THROWS_AS(find_homoclinic(1.0, 1.0), Supercritical);
    CHECK_THROWS_AS(find_homoclinic(1.0, 0.0), Supercritical);
    CHECK_THROWS_AS(find_homoclinic(0.0, -1.0), DomainError);
}

TEST_CASE("canonical homoclinic is stable under resolution changes") {
    const GLSolution& a = canonical();
    CHECK(a.q0 > 0.0);
    CHECK(a.q_plus != 0.0);
    GLOptions tight;
    tight.rtol = 0.5e-10;
    tight.atol = 0.5e-12;
    CHECK(std::abs(find_homoclinic(1.0, -1.0, tight).q0 - a.q0) < 1e-6);
    GLOptions longer;
    longer.s_max_factor = 60.0;
    CHECK(std::abs(find_homoclinic(1.0, -1.0, longer).q0 - a.q0) < 1e-6);
    CHECK(std::abs(a.q0_bisection - a.q0) < 1e-6);
}

TEST_CASE("small-s and tail asymptotics") {
    const GLSolution& g = canonical();
    CHECK(std::abs(evaluate(g, 1e-4).first / std::sqrt(1e-4) - g.q0) < 1e-6);
    CHECK(std::abs(g.tail_slope + 1.0) < 0.01);
    const double s = 0.8 * g.s_max, h = 1e-3;
    auto logq = [&](double x) { return std::log(evaluate(g, x).first * std::sqrt(x)); };
    const double slope = (logq(s + h) - logq(s - h)) / (2 * h);
    CHECK(std::abs(slope + 1.0) < 0.01);
}

TEST_CASE("profile is single-humped and positive") {
    const GLSolution& g = canonical();
    REQUIRE(g.s_grid.size() > 100);
    std::size_t imax = 0;
    for (std::size_t k = 0; k < g.q_samples.size(); ++k) {
        CHECK(g.q_samples[k] > 0.0);
        if (g.q_samples[k] > g.q_samples[imax]) imax = k;
    }
    CHECK(imax > 0);
    CHECK(imax + 1 < g.q_samples.size());
}

TEST_CASE("evaluate is continuous across its seams") {
    const GLSolution& g = canonical();
    for (double s : {g.s_min, g.s_max}) {
        const double lo = evaluate(g, s * (1 - 1e-12)).first, hi = evaluate(g, s * (1 + 1e-12)).first;
        CHECK(std::abs(lo - hi) <= 1e-8 * std::abs(hi));
    }
}

TEST_CASE("samples satisfy the equation") {
    const GLSolution& g = canonical();
    const auto& s = g.s_grid;
    const auto& q = g.q_samples;
    const auto& w = g.dq_samples;
    double qmax = 0.0;
    for (double v : q) qmax = std::max(qmax, v);
    const double ds = s[1] - s[0];
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < s.size(); ++k) {
        if (s[k] < 1.0) continue;  // the s^(1/2) cusp swamps the stencil below this
        auto d = [&](const std::vector<double>& f) {
            return (-f[k + 2] + 8 * f[k + 1] - 8 * f[k - 1] + f[k - 2]) / (12 * ds);
        };
        const double r1 = d(q) - (-q[k] / (2 * s[k]) + w[k]);
        const double r2 = d(w) - (-w[k] / (2 * s[k]) + g.c0 * q[k] + g.c3 * q[k] * q[k] * q[k]);
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    CHECK(worst <= 1e-6 * qmax);
}

TEST_CASE("scaling covariance") {
    const double q0c = canonical().q0;
    for (auto [c0, c3] : {std::pair{0.25, -1.95222}, std::pair{4.0, -0.5}, std::pair{1.0, -1.0}}) {
        const GLSolution g = find_homoclinic(c0, c3);
        CHECK(std::abs(g.q0 - scaled_q0(c0, c3, q0c)) < 1e-8);
    }
}
