#include <doctest.h>

#include <cmath>
#include <random>

#include "rings/errors.hpp"
#include "rings/fixtures.hpp"
#include "rings/matching.hpp"

using namespace rings;

namespace {

VectorXd vec(std::initializer_list<double> v) {
    VectorXd a(Eigen::Index(v.size()));
    Eigen::Index i = 0;
    for (double x : v) a[i++] = x;
    return a;
}

VectorXd random_vec(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1, 1);
    VectorXd a(n);
    for (int i = 0; i < n; ++i) a[i] = u(rng);
    return a;
}

// Independent coding of the N = 2 even-m system (D_2 = 3).
VectorXd n2_even_oracle(const VectorXd& a) {
    const double a0 = a[0], a1 = a[1], a2 = a[2];
    VectorXd c(3);
    c[0] = a0 * a0 * a0 + 6 * a0 * a1 * a1 + 6 * a0 * a2 * a2 + 6 * a1 * a1 * a2;
    c[1] = 3 * a0 * a0 * a1 + 3 * a1 * a1 * a1 + 6 * a1 * a2 * a2 + 6 * a0 * a1 * a2;
    c[2] = 3 * a0 * a0 * a2 + 3 * a2 * a2 * a2 + 6 * a1 * a1 * a2 + 3 * a0 * a1 * a1;
    return c;
}

bool contains(const std::vector<MatchSolution>& sols, const VectorXd& a, double tol = 5e-3) {
    for (const auto& s : sols)
        if (s.a.size() == a.size() && (s.a - a).cwiseAbs().maxCoeff() < tol) return true;
    return false;
}

VectorXd R(const VectorXd& a) {
    VectorXd r = a;
    for (Eigen::Index i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return r;
}

}  // namespace

TEST_CASE("cubic map on small cases") {
    CHECK(cubic_map({3, 0}, vec({1.0}))[0] == doctest::Approx(1.0));
    CHECK(cubic_map({2, 0}, vec({0.5}))[0] == doctest::Approx(0.125));
    const double s = 1.0 / std::sqrt(3.0);
    const VectorXd c = cubic_map({3, 1}, vec({0.0, s}));
    CHECK(std::abs(c[0]) < 1e-15);
    CHECK(c[1] == doctest::Approx(s).epsilon(1e-14));
    CHECK_THROWS_AS(cubic_map({2, 2}, vec({1.0, 0.0})), DimensionMismatch);
    CHECK_THROWS_AS(jacobian({2, 2}, vec({1.0})), DimensionMismatch);
}

TEST_CASE("even-m N=2 map equals the direct coding") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        const VectorXd a = random_vec(rng, 3);
        CHECK((cubic_map({2, 2}, a) - n2_even_oracle(a)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("cubic map symmetries") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const int m = 1 + int(rng() % 6), N = int(rng() % 7);
        const MatchProblem p{m, N};
        const VectorXd a = random_vec(rng, N + 1);
        const VectorXd c = cubic_map(p, a);
        CHECK((cubic_map(p, -a) + c).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((cubic_map(p, R(a)) - R(c)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((jacobian(p, a) * a - 3.0 * c).cwiseAbs().maxCoeff() <= 1e-10);
        const MatrixXd J = jacobian(p, a);
        for (int n = 1; n <= N; ++n) {
            CHECK(std::abs(J(0, n) - 2.0 * J(n, 0)) <= 1e-10);
            for (int l = 1; l <= N; ++l) CHECK(std::abs(J(n, l) - J(l, n)) <= 1e-10);
        }
    }
}

TEST_CASE("map depends on m only through its parity") {
    std::mt19937_64 rng(29);
    for (int N = 0; N <= 6; ++N) {
        const VectorXd a = random_vec(rng, N + 1);
        const VectorXd e = cubic_map({2, N}, a), o = cubic_map({1, N}, a);
        CHECK((cubic_map({4, N}, a) - e).cwiseAbs().maxCoeff() == 0.0);
        CHECK((cubic_map({6, N}, a) - e).cwiseAbs().maxCoeff() == 0.0);
        CHECK((cubic_map({3, N}, a) - o).cwiseAbs().maxCoeff() == 0.0);
        CHECK((cubic_map({5, N}, a) - o).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("jacobian matches central differences") {
    std::mt19937_64 rng(31);
    CHECK(jacobian({2, 3}, VectorXd::Zero(4)).cwiseAbs().maxCoeff() == 0.0);
    for (int t = 0; t < 20; ++t) {
        const MatchProblem p{1 + int(rng() % 4), 1 + int(rng() % 5)};
        const VectorXd a = random_vec(rng, p.N + 1);
        const MatrixXd J = jacobian(p, a);
        for (int l = 0; l <= p.N; ++l) {
            VectorXd e = VectorXd::Zero(p.N + 1);
            e[l] = 1e-6;
            const VectorXd fd = (cubic_map(p, a + e) - cubic_map(p, a - e)) / 2e-6;
            CHECK((J.col(l) - fd).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("canonical representatives") {
    CHECK((canonicalize(vec({-0.447, 0.365})) - vec({0.447, 0.365})).norm() == 0.0);
    CHECK((canonicalize(vec({0.0, -0.577})) - vec({0.0, 0.577})).norm() == 0.0);
    CHECK((canonicalize(vec({0.447, 0.365})) - vec({0.447, 0.365})).norm() == 0.0);
    std::mt19937_64 rng(37);
    for (int t = 0; t < 30; ++t) {
        const VectorXd a = random_vec(rng, 4);
        const VectorXd c = canonicalize(a);
        CHECK((canonicalize(c) - c).norm() == 0.0);
        CHECK((canonicalize(-R(a)) - c).norm() == 0.0);
    }
}

TEST_CASE("harmonic lift") {
    CHECK((harmonic_lift(vec({1.0}), 2, 2) - vec({1, 0, 0})).norm() == 0.0);
    CHECK((harmonic_lift(vec({0.0, 0.577}), 2, 4) - vec({0, 0, 0.577, 0, 0})).norm() == 0.0);
    CHECK_THROWS_AS(harmonic_lift(vec({0.0, 0.577}), 3, 2), DimensionMismatch);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        const int m = 1 + int(rng() % 3), k = 2 + int(rng() % 2), N = 2 + int(rng() % 5);
        const VectorXd b = random_vec(rng, N / k + 1);
        const VectorXd lhs = cubic_map({m, N}, harmonic_lift(b, k, N));
        const VectorXd rhs = harmonic_lift(cubic_map({m * k, N / k}, b), k, N);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
    for (const auto& s : solve_matching({4, 1})) {
        const VectorXd lift = harmonic_lift(s.a, 2, 3);
        CHECK((lift - cubic_map({2, 3}, lift)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("classification flags") {
    auto cls = [](const VectorXd& a, int m) {
        MatchSolution s;
        s.a = a;
        return classify(s, {m, int(a.size()) - 1});
    };
    CHECK(cls(vec({0.0, 1.0 / std::sqrt(3.0)}), 2).dm_minus);
    CHECK_FALSE(cls(vec({0.447, 0.365}), 2).dm_minus);
    CHECK(cls(vec({0, 0.286, 0, 0.433}), 3).dm_minus);
}

TEST_CASE("N = 1 roots") {
    const auto odd = solve_matching({3, 1});
    CHECK(count_primary(odd) == 1);
    CHECK(contains(odd, vec({0.0, 0.577})));
    const auto even = solve_matching({2, 1});
    CHECK(count_primary(even) == 2);
    CHECK(contains(even, vec({0.0, 0.577})));
    CHECK(contains(even, vec({0.447, 0.365})));
    for (const auto& s : even) {
        CHECK(s.residual_norm <= 1e-10);
        CHECK(s.canonical);
        CHECK((s.a - cubic_map({2, 1}, s.a)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(((jacobian({2, 1}, s.a) * s.a) - 3.0 * s.a).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("N = 2 roots") {
    const auto even = solve_matching({2, 2});
    CHECK(count_primary(even) == 4);
    for (auto row : {vec({0.206, 0.215, -0.467}), vec({0.274, 0.255, 0.203}), vec({0.367, 0.507, -0.250}),
                     vec({0.649, 0.293, -0.189})})
        CHECK(contains(even, row));
    const auto odd = solve_matching({3, 2});
    CHECK(count_primary(odd) == 0);
    for (const auto& s : odd) CHECK_FALSE(s.primary());
}

TEST_CASE("solver output is independent of the thread count") {
    SolveOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const auto a = solve_matching({2, 2}, one), b = solve_matching({2, 2}, many);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].a - b[i].a).norm() == 0.0);
}

TEST_CASE("reference comparison for N <= 2") {
    for (int m : {2, 3})
        for (int N = 0; N <= 2; ++N) {
            const MatchProblem p{m, N};
            const auto cmp = compare_with_reference(p, solve_matching(p));
            CHECK(cmp.has_table);
            CHECK(cmp.pass());
        }
    CHECK_FALSE(compare_with_reference({2, 7}, solve_matching({2, 1})).has_table);
}

TEST_CASE("embedded erratum row is a root after correction") {
    const auto& errata = reference_errata();
    REQUIRE(errata.size() == 1);
    const auto& e = errata.front();
    const MatchProblem p{e.m, e.N};
    const VectorXd printed = Eigen::Map<const VectorXd>(e.printed.data(), Eigen::Index(e.printed.size()));
    const VectorXd fixed = Eigen::Map<const VectorXd>(e.corrected.data(), Eigen::Index(e.corrected.size()));
    const auto root = newton_match(CubicMap(p), fixed);
    REQUIRE(root);
    CHECK((*root - fixed).cwiseAbs().maxCoeff() < kReferenceTol);
    CHECK((*root - printed).cwiseAbs().maxCoeff() > kReferenceTol);
}
