#include "rings/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "rings/errors.hpp"
#include "rings/specfun.hpp"

namespace rings {

namespace {

constexpr double kPi = std::numbers::pi;

double psi(const ProfileContext& ctx, int n, double r) {
    return r - ctx.m * n * kPi / 2.0 - kPi / 4.0;
}

Vec2 core_from(const ProfileContext& ctx, double Jnu, double Jnu1, double r) {
    const double pre = std::pow(ctx.mu, 0.75) * ctx.gl->q0 * std::sqrt(kPi / 2.0);
    return pre * (r * Jnu1 * ctx.turing.U0 + 2.0 * Jnu * ctx.turing.U1);
}

Vec2 far_from(const ProfileContext& ctx, int n, double r, double q, double dq) {
    const double p = psi(ctx, n, r);
    const double smu = std::sqrt(ctx.mu);
    return smu * (q * std::sin(p) * ctx.turing.U0 + 2.0 * smu * dq * std::cos(p) * ctx.turing.U1);
}

}  // namespace

std::vector<std::string> ProfileContext::violations() const {
    std::vector<std::string> v;
    const double need = 2.0 * double(m * N) * double(m * N) + 20.0;
    std::ostringstream os;
    if (r0 < need) {
        os << "r0=" << r0 << " < 2(mN)^2+20=" << need;
        v.push_back(os.str());
        os.str("");
    }
    if (!(r1 > 0.0 && r1 <= 1.0)) {
        os << "r1=" << r1 << " outside (0,1]";
        v.push_back(os.str());
        os.str("");
    }
    if (!(r1 / std::sqrt(mu) > r0)) {
        os << "r1/sqrt(mu)=" << r1 / std::sqrt(mu) << " <= r0=" << r0;
        v.push_back(os.str());
    }
    return v;
}

double default_r0(int m, int N, double mu) {
    return std::max(2.0 * (m * N + 1), std::cbrt(24.0 / mu));
}

ProfileContext make_context(const RDSystem& sys, std::shared_ptr<const GLSolution> gl, int m,
                            const VectorXd& a, double mu, const ProfileParams& params) {
    if (!(mu > 0.0)) throw DomainError("mu must be positive");
    if (m < 1) throw DomainError("m must be positive");
    if (a.size() < 1) throw DimensionMismatch("empty amplitude vector");
    ProfileContext ctx;
    ctx.m = m;
    ctx.N = int(a.size()) - 1;
    ctx.mu = mu;
    ctx.a = a;
    ctx.turing = verify_turing(sys);
    ctx.coeffs = coefficients(sys, ctx.turing);
    ctx.gl = std::move(gl);
    ctx.r0 = params.r0 > 0.0 ? params.r0 : default_r0(m, ctx.N, mu);
    ctx.r1 = params.r1;
    ctx.sign = params.sign >= 0 ? 1 : -1;
    ctx.mode = params.mode;
    ctx.blend = params.blend;
    return ctx;
}

ProfileContext make_context(const RDSystem& sys, int m, const VectorXd& a, double mu,
                            const ProfileParams& params) {
    const BifCoefficients bc = coefficients(sys);
    auto gl = std::make_shared<const GLSolution>(find_homoclinic(bc.c0, bc.c3));
    return make_context(sys, std::move(gl), m, a, mu, params);
}

Vec2 core_branch(const ProfileContext& ctx, int n, double r) {
    const int nu = ctx.m * n;
    const auto j = bessel_j_sequence(nu + 1, r);
    return core_from(ctx, j[nu], j[nu + 1], r);
}

Vec2 middle_branch(const ProfileContext& ctx, int n, double r) {
    const double p = psi(ctx, n, r);
    const double pre = std::pow(ctx.mu, 0.75) * ctx.gl->q0;
    return pre * (std::sqrt(r) * std::sin(p) * ctx.turing.U0 + 2.0 / std::sqrt(r) * std::cos(p) * ctx.turing.U1);
}

Vec2 far_branch(const ProfileContext& ctx, int n, double r) {
    const auto [q, dq] = evaluate(*ctx.gl, std::sqrt(ctx.mu) * r);
    return far_from(ctx, n, r, q, dq);
}

std::vector<Vec2> radial_amplitudes(const ProfileContext& ctx, double r) {
    const int N = ctx.N;
    std::vector<Vec2> out(N + 1, Vec2::Zero());
    const double lo = ctx.blend == SeamBlend::Cosine ? 0.95 * ctx.r0 : ctx.r0;
    const double hi = ctx.blend == SeamBlend::Cosine ? 1.05 * ctx.r0 : ctx.r0;
    const double r_mid_end = ctx.r1 / std::sqrt(ctx.mu);

    std::vector<double> j;
    if (r <= hi) j = bessel_j_sequence(ctx.m * N + 1, r);
    double q = 0.0, dq = 0.0;
    if (r > lo) std::tie(q, dq) = evaluate(*ctx.gl, std::sqrt(ctx.mu) * r);

    for (int n = 0; n <= N; ++n) {
        if (ctx.a[n] == 0.0) continue;
        const int nu = ctx.m * n;
        Vec2 v;
        if (r <= lo) {
            v = core_from(ctx, j[nu], j[nu + 1], r);
        } else if (r <= hi) {
            const double w = 0.5 * (1.0 - std::cos(kPi * (r - lo) / (hi - lo)));
            v = (1.0 - w) * core_from(ctx, j[nu], j[nu + 1], r) + w * far_from(ctx, n, r, q, dq);
        } else if (ctx.mode == ProfileMode::ThreeRegion && r <= r_mid_end) {
            v = middle_branch(ctx, n, r);
        } else {
            v = far_from(ctx, n, r, q, dq);
        }
        out[n] = double(ctx.sign) * 2.0 * ctx.a[n] * v;
    }
    return out;
}

Vec2 radial_amplitude(const ProfileContext& ctx, int n, double r) {
    if (n < 0 || n > ctx.N) throw DimensionMismatch("mode index out of range");
    if (r < 0.0) throw DomainError("radius must be nonnegative");
    return radial_amplitudes(ctx, r)[n];
}

Vec2 field_vector(const ProfileContext& ctx, double r, double theta) {
    const auto u = radial_amplitudes(ctx, r);
    Vec2 f = u[0];
    for (int n = 1; n <= ctx.N; ++n) f += 2.0 * u[n] * std::cos(ctx.m * n * theta);
    return f;
}

double field_value(const ProfileContext& ctx, double x, double y, int projection) {
    const Vec2 f = field_vector(ctx, std::hypot(x, y), std::atan2(y, x));
    return (projection == 0 ? ctx.turing.U0s : ctx.turing.U1s).dot(f);
}

RingField synthesize_field(const ProfileContext& ctx, const FieldGrid& grid, int projection, int threads) {
    if (grid.points < 0 || !(grid.half_width > 0.0)) throw DomainError("grid resolution must be positive");
    RingField field;
    field.grid = grid;
    field.m = ctx.m;
    field.N = ctx.N;
    field.mu = ctx.mu;
    field.projection = projection;

    const int P = grid.points;
    const double L = grid.half_width;
    const double step = P > 1 ? 2.0 * L / (P - 1) : 0.0;
    std::vector<std::vector<std::array<double, 3>>> rows(P);
    auto work = [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            const double y = P > 1 ? -L + j * step : 0.0;
            for (int i = 0; i < P; ++i) {
                const double x = P > 1 ? -L + i * step : 0.0;
                if (grid.disc && std::hypot(x, y) > L * (1.0 + 1e-12)) continue;
                rows[j].push_back({x, y, field_value(ctx, x, y, projection)});
            }
        }
    };
    threads = std::max(1, std::min(threads, P));
    if (threads == 1) {
        work(0, P);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (P + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int b = t * chunk, e = std::min(P, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& row : rows)
        for (const auto& s : row) {
            field.x.push_back(s[0]);
            field.y.push_back(s[1]);
            field.values.push_back(s[2]);
        }

    const int R = 400;
    field.mode_amplitudes.assign(ctx.N + 1, {});
    for (int k = 0; k <= R; ++k) {
        const double r = L * k / R;
        field.radial_r.push_back(r);
        const auto u = radial_amplitudes(ctx, r);
        for (int n = 0; n <= ctx.N; ++n) field.mode_amplitudes[n].push_back(u[n]);
    }
    return field;
}

VectorXd apply_R(const VectorXd& a) {
    VectorXd b = a;
    for (Eigen::Index n = 1; n < b.size(); n += 2) b[n] = -b[n];
    return b;
}

double r_rotation_defect(const ProfileContext& ctx, int samples, unsigned seed) {
    ProfileContext rc = ctx;
    rc.a = apply_R(ctx.a);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> R(0.0, 3.0 * ctx.r0), T(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double r = R(rng), th = T(rng);
        const double lhs = ctx.turing.U0s.dot(field_vector(rc, r, th));
        const double rhs = ctx.turing.U0s.dot(field_vector(ctx, r, th + kPi / ctx.m));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double mode_max(const ProfileContext& ctx, int n, double r_lo, double r_hi, double dr) {
    double best = 0.0;
    for (double r = r_lo; r <= r_hi + 1e-12; r += dr)
        best = std::max(best, std::abs(ctx.turing.U0s.dot(radial_amplitude(ctx, n, r))));
    return best;
}

double seam_mismatch(const ProfileContext& ctx, int n) {
    double diff = 0.0, ref = 0.0;
    for (double r = ctx.r0; r <= ctx.r0 + 2.0 * kPi; r += 0.01) {
        const Vec2 c = core_branch(ctx, n, r), f = far_branch(ctx, n, r);
        diff = std::max(diff, (c - f).norm());
        ref = std::max(ref, f.norm());
    }
    return ref > 0.0 ? diff / ref : 0.0;
}

}  // namespace rings
