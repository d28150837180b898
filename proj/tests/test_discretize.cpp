#include "gbc/discretize.hpp"
#include "gbc/errors.hpp"
#include "gbc/steady.hpp"
#include "gbc/tridiag.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gbc;

namespace {

double max_err(const Profile& p, auto&& exact) {
    double e = 0.0;
    for (int i = 0; i < p.grid.size(); ++i)
        e = std::max(e, std::abs(p[static_cast<std::size_t>(i)] - exact(p.grid.node(i))));
    return e;
}

} // namespace

TEST(Grid, EndpointsAreExactAnchors) {
    const Grid g(-2.0, 2.0, 7);
    EXPECT_EQ(g.node(0), -2.0);
    EXPECT_EQ(g.node(7), 2.0);
    EXPECT_EQ(g.size(), 8);
    EXPECT_DOUBLE_EQ(g.h(), 4.0 / 7.0);
    for (int i = 1; i <= 7; ++i) EXPECT_LT(g.node(i - 1), g.node(i));
}

TEST(Grid, SymmetricIntervalGivesMirroredNodes) {
    const Grid g(-2.0, 2.0, 400);
    for (int i = 0; i <= 400; ++i) EXPECT_EQ(g.node(i), -g.node(400 - i));
    EXPECT_EQ(g.node(200), 0.0);
}

TEST(Grid, RejectsDegenerateInput) {
    EXPECT_THROW(Grid(1.0, 1.0, 4), InvalidArgument);
    EXPECT_THROW(Grid(0.0, 1.0, 0), InvalidArgument);
}

TEST(Grid, NearestClampsToRange) {
    const Grid g(0.0, 1.0, 10);
    EXPECT_EQ(g.nearest(0.31), 3);
    EXPECT_EQ(g.nearest(-5.0), 0);
    EXPECT_EQ(g.nearest(5.0), 10);
}

TEST(Profile, ValidatesLengthAndFiniteness) {
    const Grid g(0.0, 1.0, 2);
    EXPECT_THROW(Profile(g, {0.0, 1.0}, 0.0), InvalidArgument);
    EXPECT_THROW(Profile(g, {0.0, NAN, 1.0}, 0.0), InvalidArgument);
    EXPECT_NO_THROW(Profile(g, {0.0, 0.5, 1.0}, 0.0));
}

TEST(Diff1, LinearIsExact) {
    const auto p = Profile::sample(Grid(-1.0, 1.0, 10), [](double u) { return u; });
    const Profile d = diff1(p);
    for (double v : d.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Diff1, QuadraticIsExact) {
    const auto p = Profile::sample(Grid(0.0, 1.0, 8), [](double u) { return u * u; });
    const Profile d = diff1(p);
    EXPECT_LT(max_err(d, [](double u) { return 2.0 * u; }), 1e-13);
}

TEST(Diff1, SineConvergesAtSecondOrder) {
    auto err = [](int n) {
        const auto p = Profile::sample(Grid(0.0, std::numbers::pi, n), [](double u) { return std::sin(u); });
        return max_err(diff1(p), [](double u) { return std::cos(u); });
    };
    const double ratio = err(100) / err(200);
    EXPECT_NEAR(ratio, 4.0, 0.3);
}

TEST(Diff1, NeedsTwoCells) {
    EXPECT_THROW(diff1(Profile(Grid(0.0, 1.0, 1), {0.0, 1.0}, 0.0)), InvalidArgument);
}

TEST(Diff2, QuadraticGivesTwoEverywhere) {
    const auto p = Profile::sample(Grid(-1.3, 2.1, 9), [](double u) { return u * u; });
    for (double v : diff2(p).values) EXPECT_NEAR(v, 2.0, 1e-11);
}

TEST(Diff2, CubicIsExactAtInteriorNodes) {
    const auto p = Profile::sample(Grid(-2.0, 2.0, 16), [](double u) { return u * u * u; });
    const Profile d = diff2(p);
    for (int i = 1; i < 16; ++i) EXPECT_NEAR(d[static_cast<std::size_t>(i)], 6.0 * p.grid.node(i), 1e-11);
}

TEST(Diff2, EndStencilsAreExactForCubics) {
    const auto p = Profile::sample(Grid(-2.0, 2.0, 16), [](double u) { return u * u * u - u; });
    const Profile d = diff2(p);
    EXPECT_NEAR(d.values.front(), -12.0, 1e-10);
    EXPECT_NEAR(d.values.back(), 12.0, 1e-10);
}

TEST(Diff2, CosineConvergesAtSecondOrder) {
    auto err = [](int n) {
        const auto p = Profile::sample(Grid(0.0, 2.0, n), [](double u) { return std::cos(u); });
        return max_err(diff2(p), [](double u) { return -std::cos(u); });
    };
    EXPECT_NEAR(err(100) / err(200), 4.0, 0.3);
}

TEST(Trapezoid, ConstantGivesLength) {
    const auto p = Profile::sample(Grid(-0.5, 2.5, 13), [](double) { return 1.0; });
    EXPECT_DOUBLE_EQ(trapezoid(p), 3.0);
}

TEST(Trapezoid, OddFunctionOnSymmetricGridIsZero) {
    const auto p = Profile::sample(Grid(-2.0, 2.0, 400), [](double u) { return u; });
    EXPECT_NEAR(trapezoid(p), 0.0, 1e-15);
}

TEST(Trapezoid, QuadraticMatchesErrorFormula) {
    const auto p = Profile::sample(Grid(0.0, 1.0, 100), [](double u) { return u * u; });
    const double err = trapezoid(p) - 1.0 / 3.0;
    EXPECT_LT(std::abs(err), 2e-5);
    // composite trapezoid error for u^2 on [0,1] is exactly h^2/6
    EXPECT_NEAR(err, 1e-4 / 6.0, 1e-15);
}

TEST(InvertMonotone, IdentityProfile) {
    const auto p = Profile::sample(Grid(-1.0, 1.0, 20), [](double u) { return u; });
    const std::vector<double> t{0.3};
    EXPECT_NEAR(invert_monotone(p, t)[0], 0.3, 1e-12);
}

TEST(InvertMonotone, NonMonotoneSteadyStateIsRejected) {
    const Grid g(-2.0, 2.0, 400);
    const auto p = Profile::sample(g, [](double u) { return steady_linear(-2.0, 2.0, u); });
    const std::vector<double> t{0.0};
    EXPECT_THROW(invert_monotone(p, t), NotMonotone);
}

TEST(InvertMonotone, EndpointTargetReturnsEndpoint) {
    // increasing cubic through (0,-1) and (3,1)
    const auto p = Profile::sample(Grid(0.0, 3.0, 30),
                                   [](double u) { return -1.0 + 2.0 * (u / 3.0) * (u / 3.0) * (u / 3.0); });
    const std::vector<double> t{1.0, -1.0};
    const auto r = invert_monotone(p, t);
    EXPECT_EQ(r[0], 3.0);
    EXPECT_EQ(r[1], 0.0);
}

TEST(InvertMonotone, TargetOutsideRangeThrows) {
    const auto p = Profile::sample(Grid(0.0, 1.0, 10), [](double u) { return u; });
    const std::vector<double> t{1.5};
    EXPECT_THROW(invert_monotone(p, t), OutOfRange);
}

TEST(InvertMonotone, NoOvershootBetweenNodes) {
    // steep step: a cubic spline would overshoot, the monotone interpolant does not
    const Grid g(0.0, 1.0, 10);
    const auto p = Profile::sample(g, [](double u) { return u < 0.5 ? 0.001 * u : 1.0 + 0.001 * u; });
    std::vector<double> targets;
    for (int k = 1; k < 100; ++k) targets.push_back(p.front() + (p.back() - p.front()) * k / 100.0);
    const auto r = invert_monotone(p, targets);
    for (std::size_t k = 1; k < r.size(); ++k) EXPECT_GE(r[k], r[k - 1]);
    for (double u : r) {
        EXPECT_GE(u, 0.0);
        EXPECT_LE(u, 1.0);
    }
}

TEST(Norms, MaxAbsAndDiff) {
    const std::vector<double> a{1.0, -3.0, 2.0}, b{1.5, -3.0, 0.0};
    EXPECT_EQ(max_abs(a), 3.0);
    EXPECT_EQ(max_abs_diff(a, b), 2.0);
}

TEST(Tridiagonal, MatchesDenseElimination) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 12;
    std::vector<double> lo(n), di(n), up(n), rhs(n), scratch(n);
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = i > 0 ? u(rng) : 0.0;
        up[i] = i + 1 < n ? u(rng) : 0.0;
        di[i] = 3.0 + u(rng);
        rhs[i] = u(rng);
        if (i > 0) A[i][i - 1] = lo[i];
        A[i][i] = di[i];
        if (i + 1 < n) A[i][i + 1] = up[i];
        A[i][n] = rhs[i];
    }
    // Gauss-Jordan on the dense augmented matrix
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double m = A[r][c] / A[c][c];
            for (std::size_t k = c; k <= n; ++k) A[r][k] -= m * A[c][k];
        }
    }
    solve_tridiagonal(lo, di, up, rhs, scratch);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(rhs[i], A[i][n] / A[i][i], 1e-13);
}

TEST(Tridiagonal, ZeroPivotThrows) {
    std::vector<double> lo{0.0, 1.0}, di{0.0, 1.0}, up{1.0, 0.0}, rhs{1.0, 1.0}, s(2);
    EXPECT_THROW(solve_tridiagonal(lo, di, up, rhs, s), SolveFailure);
}
