#include "gbc/errors.hpp"
#include "gbc/solver.hpp"
#include "gbc/steady.hpp"
#include "gbc/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gbc;

namespace {

// increasing profile with a closed-form inverse
constexpr double A = 0.0, B = 2.0;
const double kScale = std::exp(B - A) - 1.0;

double x_of(double u) { return -1.0 + 2.0 * (std::exp(u - A) - 1.0) / kScale; }
double u_of(double x) { return A + std::log1p((x + 1.0) * kScale / 2.0); }

Profile exp_profile(int n) {
    auto p = Profile::sample(Grid(A, B, n), x_of);
    p.values.front() = -1.0;
    p.values.back() = 1.0;
    return p;
}

} // namespace

TEST(XToU, LinearInverse) {
    const auto xp = Profile::sample(Grid(-2.0, 2.0, 40), [](double u) { return u / 2.0; });
    const Profile up = x_to_u(xp, Grid(-1.0, 1.0, 40));
    for (int i = 0; i <= 40; ++i)
        EXPECT_NEAR(up[static_cast<std::size_t>(i)], 2.0 * up.grid.node(i), 1e-12);
}

TEST(XToU, MatchesClosedFormInverse) {
    auto err = [](int n) {
        const Profile up = x_to_u(exp_profile(n), Grid(-1.0, 1.0, n));
        double e = 0.0;
        for (int i = 0; i <= n; ++i)
            e = std::max(e, std::abs(up[static_cast<std::size_t>(i)] - u_of(up.grid.node(i))));
        return e;
    };
    EXPECT_LT(err(400), 1e-5);
    // the monotone interpolant loses an order near steep ends; still at least second order
    EXPECT_GT(err(200) / err(400), 3.5);
    const Profile up = x_to_u(exp_profile(50), Grid(-1.0, 1.0, 50));
    EXPECT_EQ(up.front(), A);
    EXPECT_EQ(up.back(), B);
}

TEST(XToU, KeepsTime) {
    Profile xp = exp_profile(50);
    xp.time = 0.75;
    EXPECT_EQ(x_to_u(xp, Grid(-1.0, 1.0, 50)).time, 0.75);
}

TEST(XToU, RoundTrip) {
    auto err = [](int n) {
        const Profile xp = exp_profile(n);
        const Profile back = u_to_x(x_to_u(xp, Grid(-1.0, 1.0, n)), xp.grid);
        return max_abs_diff(back.values, xp.values);
    };
    EXPECT_LT(err(400), 1e-5);
    EXPECT_GT(err(200) / err(400), 3.5);
}

TEST(XToU, SlopesAreReciprocal) {
    const Profile xp = exp_profile(800);
    const Profile up = x_to_u(xp, Grid(-1.0, 1.0, 800));
    const Profile xu = diff1(xp);
    const Profile ux = diff1(up);
    for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
        const double u = u_of(x);
        const double lhs = ux[static_cast<std::size_t>(up.grid.nearest(x))];
        const double rhs = 1.0 / xu[static_cast<std::size_t>(xp.grid.nearest(u))];
        EXPECT_NEAR(lhs * (1.0 / rhs), 1.0, 1e-2) << "x=" << x;
    }
}

TEST(XToU, SecondDerivativeRelation) {
    // u_xx = -x_uu / x_u^3 at corresponding points
    const Profile xp = exp_profile(800);
    const Profile up = x_to_u(xp, Grid(-1.0, 1.0, 800));
    const Profile xu = diff1(xp), xuu = diff2(xp), uxx = diff2(up);
    for (double x : {-0.5, 0.0, 0.5}) {
        const std::size_t j = static_cast<std::size_t>(xp.grid.nearest(u_of(x)));
        const double expected = -xuu[j] / std::pow(xu[j], 3);
        EXPECT_NEAR(uxx[static_cast<std::size_t>(up.grid.nearest(x))], expected,
                    0.02 * std::abs(expected));
    }
}

TEST(XToU, FoldedProfileThrows) {
    const Grid g(-2.0, 2.0, 200);
    const Profile xs = compute_steady_state(-2.0, 2.0, Nonlinearity::linear(), g).profile;
    EXPECT_THROW(x_to_u(xs, Grid(-1.0, 1.0, 200)), NotMonotone);
}

TEST(XToU, AfterBlowupThrows) {
    ProblemSpec s;
    s.grid_cells = 200;
    s.initial = InitialData::steady_plus_sine(0.2);
    const std::vector<double> times{0.01, 0.05};
    const Trajectory tr = solve_x_eps(s, 1e-4, 0.05, times);
    EXPECT_NO_THROW(x_to_u(tr.snapshots[1], Grid(-1.0, 1.0, 200)));
    EXPECT_THROW(x_to_u(tr.snapshots[2], Grid(-1.0, 1.0, 200)), NotMonotone);
}

TEST(XToU, TargetGridMustSpanRange) {
    EXPECT_THROW(x_to_u(exp_profile(20), Grid(-1.0, 2.0, 20)), InvalidArgument);
}

TEST(ToGraph, KeepsPointsAndFlagsFolds) {
    const Grid g(-2.0, 2.0, 400);
    const Profile xs = compute_steady_state(-2.0, 2.0, Nonlinearity::linear(), g).profile;
    const GraphCurve c = to_graph(xs);
    ASSERT_EQ(c.points.size(), 401u);
    EXPECT_FALSE(c.monotone_in_x);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        EXPECT_EQ(c.points[i].first, xs[i]);
        EXPECT_EQ(c.points[i].second, g.node(static_cast<int>(i)));
    }
    // the folded graph meets x = 0 at u = -1, 0, 1
    for (double u : {-1.0, 0.0, 1.0})
        EXPECT_NEAR(c.points[static_cast<std::size_t>(g.nearest(u))].first, 0.0, 1e-15);
    EXPECT_TRUE(to_graph(exp_profile(30)).monotone_in_x);
}
