#include "rings/glradial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <Eigen/Dense>

#include "rings/errors.hpp"

namespace rings {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

struct GLRhs {
    double c0, c3;
    void operator()(const State& y, State& dy, double s) const {
        dy[0] = -y[0] / (2.0 * s) + y[1];
        dy[1] = -y[1] / (2.0 * s) + c0 * y[0] + c3 * y[0] * y[0] * y[0];
    }
};

State series_start(double c0, double c3, double q0, double s) {
    const double c1 = c0 * q0 / 6.0;
    const double c2 = c3 * q0 * q0 * q0 / 12.0;
    const double rs = std::sqrt(s);
    return {q0 * rs + c1 * s * s * rs + c2 * s * s * s * rs,
            q0 / rs + 3.0 * c1 * s * rs + 4.0 * c2 * s * s * rs};
}

State tail_start(double c0, double q_plus, double s) {
    const double q = q_plus / std::sqrt(s) * std::exp(-std::sqrt(c0) * s);
    return {q, -std::sqrt(c0) * q};
}

auto make_stepper(double atol, double rtol) {
    return odeint::make_dense_output(atol, rtol, odeint::runge_kutta_dopri5<State>());
}

// Integrates from s0 to s1 (either direction) and returns the end state.
State integrate_to(const GLRhs& rhs, State y, double s0, double s1, double atol, double rtol) {
    auto st = make_stepper(atol, rtol);
    const double dt = (s1 > s0 ? 1.0 : -1.0) * 1e-4 * std::max(1.0, std::abs(s1 - s0));
    try {
        odeint::integrate_adaptive(st, rhs, y, s0, s1, dt);
    } catch (const std::exception& e) {
        throw StepFailure(std::string("integrator failure: ") + e.what());
    }
    return y;
}

void sample(const GLRhs& rhs, State y, const std::vector<double>& times, double atol, double rtol,
            std::vector<State>& out) {
    auto st = make_stepper(atol, rtol);
    const double dt = (times.back() > times.front() ? 1.0 : -1.0) * 1e-4;
    try {
        odeint::integrate_times(st, rhs, y, times.begin(), times.end(), dt,
                                [&](const State& x, double) { out.push_back(x); });
    } catch (const std::exception& e) {
        throw StepFailure(std::string("integrator failure: ") + e.what());
    }
}

double hermite(double y0, double y1, double d0, double d1, double h, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * d1;
}

}  // namespace

const char* to_string(ShootExit e) {
    switch (e) {
        case ShootExit::GrowsPositive: return "GrowsPositive";
        case ShootExit::CrossesZero: return "CrossesZero";
        case ShootExit::Decayed: return "Decayed";
    }
    return "?";
}

ShootResult shoot(double c0, double c3, double q0_trial, double s_max, const GLOptions& opts) {
    if (!(c0 > 0.0)) throw DomainError("shoot requires c0 > 0");
    if (!(q0_trial > 0.0)) throw DomainError("shoot requires q0 > 0");
    const GLRhs rhs{c0, c3};
    const double cap = c3 != 0.0 ? 10.0 * std::sqrt(c0 / std::abs(c3)) : 1e6;
    const double floor = 1e-10;

    auto st = make_stepper(opts.atol, opts.rtol);
    State y = series_start(c0, c3, q0_trial, opts.s_min);
    st.initialize(y, opts.s_min, 1e-4);
    bool falling = false;
    try {
        for (long steps = 0; st.current_time() < s_max; ++steps) {
            if (steps > 2000000) throw StepFailure("too many integrator steps");
            st.do_step(rhs);
            const State& x = st.current_state();
            const double s = st.current_time();
            const double dq = -x[0] / (2.0 * s) + x[1];
            if (x[0] <= 0.0) return {ShootExit::CrossesZero, s};
            if (x[0] > cap) return {ShootExit::GrowsPositive, s};
            if (dq < 0.0) falling = true;
            if (falling && dq > 0.0) return {ShootExit::GrowsPositive, s};
        }
    } catch (const StepFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw StepFailure(std::string("integrator failure: ") + e.what());
    }
    State end;
    st.calc_state(s_max, end);
    if (std::abs(end[0]) < floor) return {ShootExit::Decayed, s_max};
    return {ShootExit::GrowsPositive, s_max};
}

GLSolution find_homoclinic(double c0, double c3, const GLOptions& opts) {
    if (!(c0 > 0.0)) throw DomainError("find_homoclinic requires c0 > 0");
    if (c3 >= 0.0) throw Supercritical("c3 >= 0: the only bounded solution is q = 0");

    const double k = std::sqrt(c0);
    const double s_max = opts.s_max_factor / k;
    const double s_match = 4.0 / k;
    const double scale = std::sqrt(c0 / std::abs(c3)) * std::pow(c0, 0.25);

    double lo = 1e-6 * scale, hi = 4.0 * scale;
    const ShootExit lo_cls = shoot(c0, c3, lo, s_max, opts).exit;
    const ShootExit hi_cls = shoot(c0, c3, hi, s_max, opts).exit;
    if (lo_cls != ShootExit::GrowsPositive || hi_cls != ShootExit::CrossesZero)
        throw ClassificationAmbiguous(std::string("no bracket: q0=") + std::to_string(lo) + " -> " +
                                      to_string(lo_cls) + ", q0=" + std::to_string(hi) + " -> " +
                                      to_string(hi_cls));
    while (hi - lo > opts.bisect_width) {
        const double mid = 0.5 * (lo + hi);
        const ShootExit c = shoot(c0, c3, mid, s_max, opts).exit;
        if (c == ShootExit::Decayed) {
            lo = hi = mid;
            break;
        }
        (c == ShootExit::GrowsPositive ? lo : hi) = mid;
    }
    const double q0_bis = 0.5 * (lo + hi);

    const GLRhs rhs{c0, c3};
    const double bwd_atol = 1e-30;
    auto fwd = [&](double q0) {
        return integrate_to(rhs, series_start(c0, c3, q0, opts.s_min), opts.s_min, s_match, opts.atol, opts.rtol);
    };
    auto bwd = [&](double qp) {
        return integrate_to(rhs, tail_start(c0, qp, s_max), s_max, s_match, bwd_atol, opts.rtol);
    };

    double q0 = q0_bis;
    double qp = fwd(q0)[0] * std::sqrt(s_match) * std::exp(k * s_match);
    for (int it = 0; it < 30; ++it) {
        const State a = fwd(q0), b = bwd(qp);
        const Eigen::Vector2d F(a[0] - b[0], a[1] - b[1]);
        if (F.cwiseAbs().maxCoeff() < 1e-14 * std::max(1.0, std::abs(a[0]))) break;
        const double h0 = 1e-7 * q0, hp = 1e-7 * std::abs(qp);
        const State a2 = fwd(q0 + h0), b2 = bwd(qp + hp);
        Eigen::Matrix2d J;
        J << (a2[0] - a[0]) / h0, -(b2[0] - b[0]) / hp, (a2[1] - a[1]) / h0, -(b2[1] - b[1]) / hp;
        const Eigen::Vector2d d = J.fullPivLu().solve(-F);
        q0 += d[0];
        qp += d[1];
        if (!std::isfinite(q0) || !std::isfinite(qp)) throw NoConvergence("two-sided shooting diverged");
        if (std::abs(d[0]) < 1e-15 * q0 && std::abs(d[1]) < 1e-15 * std::abs(qp)) break;
    }

    GLSolution sol;
    sol.c0 = c0;
    sol.c3 = c3;
    sol.q0 = q0;
    sol.q0_bisection = q0_bis;
    sol.q_plus_match = qp;
    sol.s_min = opts.s_min;
    sol.s_max = s_max;
    sol.s_match = s_match;

    const int K = std::max(16, int(std::ceil((s_max - opts.s_min) / (opts.sample_step / k))));
    sol.ds = (s_max - opts.s_min) / K;
    sol.s_grid.resize(K + 1);
    for (int i = 0; i <= K; ++i) sol.s_grid[i] = opts.s_min + i * sol.ds;
    sol.s_grid[K] = s_max;
    const int split = std::clamp(int(std::lround((s_match - opts.s_min) / sol.ds)), 1, K - 1);

    std::vector<double> tf(sol.s_grid.begin(), sol.s_grid.begin() + split + 1);
    std::vector<double> tb(sol.s_grid.rbegin(), sol.s_grid.rbegin() + (K - split));
    std::vector<State> yf, yb;
    sample(rhs, series_start(c0, c3, q0, opts.s_min), tf, opts.atol, opts.rtol, yf);
    sample(rhs, tail_start(c0, qp, s_max), tb, bwd_atol, opts.rtol, yb);
    sol.q_samples.resize(K + 1);
    sol.dq_samples.resize(K + 1);
    for (int i = 0; i <= split; ++i) {
        sol.q_samples[i] = yf[i][0];
        sol.dq_samples[i] = yf[i][1];
    }
    for (int j = 0; j < K - split; ++j) {
        sol.q_samples[K - j] = yb[j][0];
        sol.dq_samples[K - j] = yb[j][1];
    }

    // Tail fit on [0.6, 0.85] s_max.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, fixed = 0;
    int cnt = 0;
    for (int i = 0; i <= K; ++i) {
        const double s = sol.s_grid[i];
        if (s < 0.6 * s_max || s > 0.85 * s_max) continue;
        const double y = std::log(sol.q_samples[i] * std::sqrt(s));
        sx += s;
        sy += y;
        sxx += s * s;
        sxy += s * y;
        fixed += y + k * s;
        ++cnt;
    }
    sol.tail_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    sol.q_plus = std::exp(fixed / cnt);
    return sol;
}

std::pair<double, double> evaluate(const GLSolution& sol, double s) {
    if (s <= sol.s_min) {
        const State y = series_start(sol.c0, sol.c3, sol.q0, std::max(s, 1e-300));
        return {y[0], y[1]};
    }
    if (s >= sol.s_max) {
        const State y = tail_start(sol.c0, sol.q_plus_match, s);
        return {y[0], y[1]};
    }
    const int K = int(sol.s_grid.size()) - 1;
    int i = std::min(K - 1, int((s - sol.s_min) / sol.ds));
    const double s0 = sol.s_grid[i], s1 = sol.s_grid[i + 1];
    const double h = s1 - s0;
    const double t = (s - s0) / h;
    const double q0 = sol.q_samples[i], q1 = sol.q_samples[i + 1];
    const double w0 = sol.dq_samples[i], w1 = sol.dq_samples[i + 1];
    const double dq0 = -q0 / (2 * s0) + w0, dq1 = -q1 / (2 * s1) + w1;
    const double dw0 = -w0 / (2 * s0) + sol.c0 * q0 + sol.c3 * q0 * q0 * q0;
    const double dw1 = -w1 / (2 * s1) + sol.c0 * q1 + sol.c3 * q1 * q1 * q1;
    return {hermite(q0, q1, dq0, dq1, h, t), hermite(w0, w1, dw0, dw1, h, t)};
}

}  // namespace rings
