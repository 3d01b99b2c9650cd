#include "rings/matching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>
#include <tuple>

#include "rings/errors.hpp"

namespace rings {

namespace {

constexpr double kZeroEntry = 1e-9;
constexpr double kDedupTol = 1e-6;

bool lex_greater(const VectorXd& x, const VectorXd& y) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] > y[i] + 1e-9) return true;
        if (x[i] < y[i] - 1e-9) return false;
    }
    return false;
}

}  // namespace

CubicMap::CubicMap(const MatchProblem& p) : p_(p) {
    if (p.m < 1 || p.N < 0) throw DimensionMismatch("need m >= 1 and N >= 0");
    const int N = p.N;
    std::map<std::tuple<int, int, int, int>, double> agg;
    for (int n = 0; n <= N; ++n)
        for (int i = -N; i <= N; ++i)
            for (int j = -N; j <= N; ++j) {
                const int k = n - i - j;
                if (std::abs(k) > N) continue;
                const int d = std::abs(i) + std::abs(j) - std::abs(k) - n;
                const int e = (p.m % 2) * (std::abs(d) / 2);
                const double sgn = (e % 2) ? -1.0 : 1.0;
                int t[3] = {std::abs(i), std::abs(j), std::abs(k)};
                std::sort(t, t + 3);
                agg[{n, t[0], t[1], t[2]}] += sgn;
            }
    for (const auto& [key, c] : agg) {
        if (c == 0.0) continue;
        const auto [n, i, j, k] = key;
        terms_.push_back({n, i, j, k, c});
    }
}

void CubicMap::check(const VectorXd& a) const {
    if (a.size() != p_.N + 1)
        throw DimensionMismatch("expected " + std::to_string(p_.N + 1) + " entries, got " +
                                std::to_string(a.size()));
}

VectorXd CubicMap::operator()(const VectorXd& a) const {
    check(a);
    VectorXd out = VectorXd::Zero(a.size());
    for (const Term& t : terms_) out[t.n] += t.c * a[t.i] * a[t.j] * a[t.k];
    return out;
}

MatrixXd CubicMap::jacobian(const VectorXd& a) const {
    check(a);
    MatrixXd J = MatrixXd::Zero(a.size(), a.size());
    for (const Term& t : terms_) {
        J(t.n, t.i) += t.c * a[t.j] * a[t.k];
        J(t.n, t.j) += t.c * a[t.i] * a[t.k];
        J(t.n, t.k) += t.c * a[t.i] * a[t.j];
    }
    return J;
}

VectorXd cubic_map(const MatchProblem& p, const VectorXd& a) { return CubicMap(p)(a); }

MatrixXd jacobian(const MatchProblem& p, const VectorXd& a) { return CubicMap(p).jacobian(a); }

VectorXd canonicalize(const VectorXd& a) {
    VectorXd base = a;
    for (auto& v : base)
        if (std::abs(v) < 1e-12) v = 0.0;
    VectorXd R = base;
    for (Eigen::Index n = 1; n < R.size(); n += 2) R[n] = -R[n];
    const VectorXd orbit[4] = {base, R, -base, -R};
    VectorXd best = orbit[0];
    for (int i = 1; i < 4; ++i)
        if (lex_greater(orbit[i], best)) best = orbit[i];
    for (auto& v : best)
        if (v == 0.0) v = 0.0;  // drop negative zeros
    return best;
}

VectorXd harmonic_lift(const VectorXd& a, int k, int N) {
    if (k < 1 || N < 0 || k * (a.size() - 1) > N)
        throw DimensionMismatch("harmonic lift does not fit in N+1 entries");
    VectorXd out = VectorXd::Zero(N + 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) out[i * k] = a[i];
    return out;
}

MatchSolution classify(MatchSolution sol, const MatchProblem& p) {
    const VectorXd& a = sol.a;
    const int N = p.N;
    sol.dm_minus = true;
    for (int n = 0; n <= N; n += 2)
        if (std::abs(a[n]) >= kZeroEntry) sol.dm_minus = false;

    sol.harmonic_of.reset();
    if (N >= 1) {
        for (int k = 2; k <= std::max(2, N); ++k) {
            bool support = true;
            for (int n = 0; n <= N; ++n)
                if (n % k != 0 && std::abs(a[n]) >= kZeroEntry) support = false;
            if (!support) continue;
            const int Nk = N / k;
            VectorXd b(Nk + 1);
            for (int i = 0; i <= Nk; ++i) b[i] = a[i * k];
            const MatchProblem pk{p.m * k, Nk};
            if ((b - cubic_map(pk, b)).cwiseAbs().maxCoeff() < 1e-9) {
                sol.harmonic_of = k;
                break;
            }
        }
    }

    const MatrixXd L = MatrixXd::Identity(N + 1, N + 1) - jacobian(p, a);
    Eigen::JacobiSVD<MatrixXd> svd(L);
    const auto& s = svd.singularValues();
    sol.sigma_min = s[s.size() - 1];
    sol.degenerate = sol.sigma_min < 1e-4 * std::max(1.0, s[0]);
    sol.inherited = sol.dm_minus && N >= 2 && N % 2 == 0;
    sol.canonical = (canonicalize(a) - a).cwiseAbs().maxCoeff() < 1e-12;
    return sol;
}

std::optional<VectorXd> newton_match(const CubicMap& C, VectorXd a, double tol, int max_iter) {
    const Eigen::Index n = a.size();
    const MatrixXd I = MatrixXd::Identity(n, n);
    VectorXd F = a - C(a);
    double r = F.cwiseAbs().maxCoeff();
    for (int it = 0; it < max_iter; ++it) {
        if (r < tol) return a;
        Eigen::PartialPivLU<MatrixXd> lu(I - C.jacobian(a));
        const VectorXd d = lu.solve(-F);
        if (!d.allFinite()) return std::nullopt;
        double lam = 1.0;
        VectorXd trial;
        VectorXd Ft;
        double rt = 0.0;
        for (;;) {
            trial = a + lam * d;
            Ft = trial - C(trial);
            rt = Ft.cwiseAbs().maxCoeff();
            if (rt < r || lam < 1.0 / 64) break;
            lam *= 0.5;
        }
        a = trial;
        F = Ft;
        r = rt;
        if (!std::isfinite(r) || a.cwiseAbs().maxCoeff() > 5.0) return std::nullopt;
    }
    if (r < tol) return a;
    return std::nullopt;
}

std::vector<MatchSolution> solve_matching(const MatchProblem& p, const SolveOptions& opts) {
    const CubicMap C(p);
    const int N = p.N;
    const int n1 = N + 1;

    std::vector<VectorXd> seeds;
    VectorXd axi = VectorXd::Zero(n1);
    axi[0] = 1.0;
    seeds.push_back(axi);
    if (opts.seed_from_lower && N >= 1) {
        SolveOptions lower = opts;
        const auto prev = solve_matching({p.m, N - 1}, lower);
        for (const auto& s : prev) {
            VectorXd v = VectorXd::Zero(n1);
            v.head(N) = s.a;
            seeds.push_back(v);
        }
        for (int k = 2; k <= N; ++k) {
            SolveOptions sub = opts;
            const auto base = solve_matching({p.m * k, N / k}, sub);
            for (const auto& s : base) seeds.push_back(harmonic_lift(s.a, k, N));
        }
    }

    const int starts = opts.starts >= 0 ? opts.starts : 500 * n1 * n1;
    const int total = int(seeds.size()) + starts;
    std::vector<std::optional<VectorXd>> found(total);

    auto work = [&](int begin, int end) {
        for (int s = begin; s < end; ++s) {
            VectorXd a0;
            if (s < int(seeds.size())) {
                a0 = seeds[s];
            } else {
                std::seed_seq sq{std::uint32_t(opts.seed & 0xffffffffu), std::uint32_t(opts.seed >> 32),
                                 std::uint32_t(s)};
                std::mt19937_64 rng(sq);
                std::uniform_real_distribution<double> U(-1.2, 1.2);
                a0.resize(n1);
                for (int i = 0; i < n1; ++i) a0[i] = U(rng);
            }
            auto root = newton_match(C, a0, opts.tol);
            if (!root) continue;
            const double amax = root->cwiseAbs().maxCoeff();
            if (amax > 2.0 || amax < 1e-4) continue;
            found[s] = canonicalize(*root);
        }
    };

    int threads = opts.threads > 0 ? opts.threads : int(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, total / 64 + 1));
    if (threads == 1) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (total + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int b = t * chunk, e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<VectorXd> roots;
    for (auto& f : found)
        if (f) roots.push_back(std::move(*f));
    std::stable_sort(roots.begin(), roots.end(), [](const VectorXd& x, const VectorXd& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });

    std::vector<MatchSolution> out;
    for (const auto& r : roots) {
        bool dup = false;
        for (const auto& s : out)
            if ((s.a - r).cwiseAbs().maxCoeff() < kDedupTol) {
                dup = true;
                break;
            }
        if (dup) continue;
        MatchSolution sol;
        sol.a = r;
        sol.residual_norm = (r - C(r)).cwiseAbs().maxCoeff();
        out.push_back(classify(std::move(sol), p));
    }
    if (out.empty()) throw NoConvergence("matching solver found no nonzero root");
    return out;
}

std::size_t count_primary(const std::vector<MatchSolution>& sols) {
    return std::size_t(std::count_if(sols.begin(), sols.end(), [](const auto& s) { return s.primary(); }));
}

}  // namespace rings
