#include "gbc/errors.hpp"
#include "gbc/model.hpp"
#include "gbc/steady.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace gbc;

namespace {

constexpr double pi = std::numbers::pi;

ProblemSpec symmetric_spec(double mu, int n = 400) {
    ProblemSpec s;
    s.grid_cells = n;
    s.initial = InitialData::steady_plus_sine(mu);
    return s;
}

ProblemSpec boundary_spec(double mu) {
    ProblemSpec s;
    s.a = 0.0;
    s.b = 3.0;
    s.f = Nonlinearity::constant(1.0);
    s.initial = InitialData::steady_plus_sine(mu);
    return s;
}

// Independent check of admissibility on a dense grid using the analytic
// derivatives of u^3/6 - u/6 + mu sin(pi u / 2) on [-2,2].
bool symmetric_family_admissible(double mu) {
    const int m = 100000;
    for (int k = 0; k <= m; ++k) {
        const double u = -2.0 + 4.0 * k / m;
        const double xu = u * u / 2.0 - 1.0 / 6.0 + mu * (pi / 2.0) * std::cos(pi * u / 2.0);
        if (xu <= 0.0) return false;
        const double xuu = u - mu * (pi * pi / 4.0) * std::sin(pi * u / 2.0);
        if (u > 0.0 && u < 2.0 && xuu > u) return false;
    }
    return true;
}

// Same for u^2/2 - 5u/6 - 1 + mu sin(pi u / 3) on [0,3].
bool boundary_family_admissible(double mu) {
    const int m = 100000;
    for (int k = 0; k <= m; ++k) {
        const double u = 3.0 * k / m;
        if (u - 5.0 / 6.0 + mu * (pi / 3.0) * std::cos(pi * u / 3.0) <= 0.0) return false;
    }
    return true;
}

} // namespace

TEST(Nonlinearity, CatalogueValues) {
    EXPECT_EQ(eval_f(Nonlinearity::linear(), 2.0), 2.0);
    EXPECT_EQ(eval_f(Nonlinearity::constant(1.0), -5.0), 1.0);
    EXPECT_EQ(eval_f(Nonlinearity::polynomial({0.0, 0.0, 1.0}), 3.0), 9.0);
    EXPECT_EQ(eval_f(Nonlinearity::zero(), 7.0), 0.0);
    EXPECT_EQ(eval_f(Nonlinearity::polynomial({1.0, -2.0, 0.5}), 2.0), 1.0 - 4.0 + 2.0);
}

TEST(Nonlinearity, KindNamesRoundTrip) {
    for (auto k : {Nonlinearity::Kind::Zero, Nonlinearity::Kind::Constant, Nonlinearity::Kind::Linear,
                   Nonlinearity::Kind::Polynomial})
        EXPECT_EQ(parse_nonlinearity_kind(to_string(k)), k);
    EXPECT_THROW(parse_nonlinearity_kind("cubic"), InvalidArgument);
}

TEST(ProblemSpec, ValidateRejectsBrokenInvariants) {
    ProblemSpec s;
    EXPECT_NO_THROW(s.validate());
    s.grid_cells = 15;
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = ProblemSpec{};
    s.eps_schedule = {1e-2, 1e-2};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = ProblemSpec{};
    s.eps_schedule = {1e-2, -1e-3};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = ProblemSpec{};
    s.b = s.a;
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = ProblemSpec{};
    s.tolerances.steady_state_tol = 0.0;
    EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(ProblemSpec, SineModeDefaultsFollowTheInterval) {
    EXPECT_EQ(symmetric_spec(0.2).sine_mode(), SineMode::Odd);
    EXPECT_EQ(boundary_spec(1.0).sine_mode(), SineMode::Half);
    ProblemSpec s = symmetric_spec(0.2);
    s.initial.mode = SineMode::Half;
    EXPECT_EQ(s.sine_mode(), SineMode::Half);
}

TEST(SineShape, VanishesAtEndsAndMatchesDerivative) {
    for (auto mode : {SineMode::Half, SineMode::Odd}) {
        EXPECT_NEAR(sine_shape(mode, -2.0, 2.0, -2.0), 0.0, 1e-15);
        EXPECT_NEAR(sine_shape(mode, -2.0, 2.0, 2.0), 0.0, 1e-15);
        const double u = 0.37, d = 1e-6;
        const double fd = (sine_shape(mode, -2.0, 2.0, u + d) - sine_shape(mode, -2.0, 2.0, u - d)) / (2 * d);
        EXPECT_NEAR(sine_shape_derivative(mode, -2.0, 2.0, u), fd, 1e-8);
    }
    EXPECT_NEAR(sine_shape(SineMode::Odd, -2.0, 2.0, 1.0), 1.0, 1e-15);
}

TEST(BuildInitialData, ZeroAmplitudeIsTheSteadyState) {
    // at b = 2 the steady state itself folds over, so it is not admissible
    EXPECT_THROW(build_initial_data(symmetric_spec(0.0)), MonotonicityViolation);
    ProblemSpec s = symmetric_spec(0.0);
    s.a = -1.5;
    s.b = 1.5;
    const Profile x0 = build_initial_data(s);
    EXPECT_EQ(x0.back(), 1.0);
    for (int i = 0; i < x0.grid.size(); ++i) {
        const double u = x0.grid.node(i);
        EXPECT_NEAR(x0[static_cast<std::size_t>(i)], steady_linear(-1.5, 1.5, u), 1e-14);
    }
}

TEST(BuildInitialData, SymmetricFamilyMatchesClosedForm) {
    const Profile x0 = build_initial_data(symmetric_spec(0.2));
    for (int i = 0; i < x0.grid.size(); ++i) {
        const double u = x0.grid.node(i);
        EXPECT_NEAR(x0[static_cast<std::size_t>(i)], u * u * u / 6.0 - u / 6.0 + 0.2 * std::sin(pi * u / 2.0), 1e-14);
    }
    EXPECT_EQ(x0.front(), -1.0);
    EXPECT_EQ(x0.back(), 1.0);
    EXPECT_NEAR(x0[200], 0.0, 1e-16);
}

TEST(BuildInitialData, SymmetricFamilyIsOddToRoundoff) {
    const Profile x0 = build_initial_data(symmetric_spec(0.2));
    const std::size_t n = x0.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(x0[i] + x0[n - 1 - i]), 1e-15);
}

TEST(BuildInitialData, AdmissibleRangeAgreesWithDenseOracle) {
    // the dense scan puts the admissible amplitudes near (1/(3 pi), 11/(3 pi)) = (0.106, 1.167)
    for (double mu : {0.05, 0.1, 0.12, 0.2, 0.3, 0.4, 0.8, 1.1, 1.2, 1.5}) {
        const bool expected = symmetric_family_admissible(mu);
        bool built = true;
        try {
            build_initial_data(symmetric_spec(mu));
        } catch (const MonotonicityViolation&) {
            built = false;
        }
        EXPECT_EQ(built, expected) << "mu=" << mu;
    }
    EXPECT_TRUE(symmetric_family_admissible(0.4));
    EXPECT_FALSE(symmetric_family_admissible(1.2));
}

TEST(BuildInitialData, AmplitudeOutsideRangeIsRejected) {
    EXPECT_THROW(build_initial_data(symmetric_spec(1.2)), MonotonicityViolation);
    EXPECT_THROW(build_initial_data(symmetric_spec(0.05)), MonotonicityViolation);
    EXPECT_THROW(build_initial_data(symmetric_spec(-0.2)), MonotonicityViolation);
}

TEST(BuildInitialData, BoundaryFamilyRange) {
    // endpoint slopes give mu in ((b^2-4)/(2 pi), (b^2+4)/(2 pi)) for b = 3
    EXPECT_NEAR(5.0 / (2.0 * pi), 0.7958, 1e-4);
    EXPECT_NEAR(13.0 / (2.0 * pi), 2.0690, 1e-4);
    for (double mu : {0.7, 0.85, 1.0, 2.0, 2.2}) {
        const bool expected = boundary_family_admissible(mu);
        bool built = true;
        try {
            build_initial_data(boundary_spec(mu));
        } catch (const MonotonicityViolation&) {
            built = false;
        }
        EXPECT_EQ(built, expected) << "mu=" << mu;
    }
}

TEST(BuildInitialData, CurvatureConditionViolation) {
    // monotone, odd, but x0_uu > u on (0,b)
    ProblemSpec s = symmetric_spec(0.0);
    s.b = 1.5;
    s.a = -1.5;
    const Grid g = s.grid();
    std::vector<double> v(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
        const double u = g.node(i);
        v[static_cast<std::size_t>(i)] = steady_linear(-1.5, 1.5, u) - 0.05 * std::sin(pi * u / 1.5);
    }
    v.front() = -1.0;
    v.back() = 1.0;
    s.initial = InitialData::explicit_values(v);
    EXPECT_THROW(build_initial_data(s), SpecialConditionViolation);
    s.symmetric_conditions = false;
    EXPECT_NO_THROW(build_initial_data(s));
}

TEST(BuildInitialData, ExplicitLengthMismatchIsRejected) {
    ProblemSpec s = symmetric_spec(0.0, 16);
    s.initial = InitialData::explicit_values({-1.0, 1.0});
    EXPECT_THROW(build_initial_data(s), InvalidArgument);
}

TEST(ValidateInitialData, SteadyStatePassesWithZeroQuotient) {
    // at b = 1.5 the steady state is itself increasing, so it is admissible data
    ProblemSpec s = symmetric_spec(0.0);
    s.a = -1.5;
    s.b = 1.5;
    const ValidationReport r = validate_initial_data(build_initial_data(s), s);
    EXPECT_TRUE(r.all_pass());
    EXPECT_LT(r.curvature_quotient_sup, 1e-8);
}

TEST(ValidateInitialData, BoundaryScenarioPasses) {
    const ProblemSpec s = boundary_spec(1.0);
    const ValidationReport r = validate_initial_data(build_initial_data(s), s);
    EXPECT_TRUE(r.all_pass());
    EXPECT_GT(r.curvature_quotient_sup, 0.0);
}

TEST(ValidateInitialData, LinearInterpolantFailsCompatibility) {
    ProblemSpec s = symmetric_spec(0.0);
    const auto line = Profile::sample(s.grid(), [](double u) { return u / 2.0; });
    const ValidationReport r = validate_initial_data(line, s);
    const ConditionCheck* c = r.find("compatibility");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->pass);
    EXPECT_NEAR(c->worst_value, 2.0, 1e-10);
    EXPECT_FALSE(r.all_pass());
    EXPECT_TRUE(r.find("strictly_increasing")->pass);
}

TEST(ValidateInitialData, LiteralCurvatureCheckIsInformational) {
    const ProblemSpec s = boundary_spec(1.0);
    const ValidationReport r = validate_initial_data(build_initial_data(s), s);
    const ConditionCheck* c = r.find("literal_endpoint_curvature");
    ASSERT_NE(c, nullptr);
    EXPECT_TRUE(c->informational);
    // f = 1 but x0_uu(b) = 1 != b = 3
    EXPECT_FALSE(c->pass);
    EXPECT_TRUE(r.all_pass());
}

TEST(ValidateInitialData, ReportsWorstNode) {
    ProblemSpec s = symmetric_spec(0.0, 16);
    std::vector<double> v(17);
    for (int i = 0; i <= 16; ++i) v[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / 16.0;
    v[5] = v[4];
    const ValidationReport r = validate_initial_data(Profile(s.grid(), v, 0.0), s);
    const ConditionCheck* c = r.find("strictly_increasing");
    EXPECT_FALSE(c->pass);
    EXPECT_EQ(c->worst_value, 0.0);
    EXPECT_EQ(c->worst_location, s.grid().node(4));
}
