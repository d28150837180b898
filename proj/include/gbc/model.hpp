#pragma once

#include "gbc/discretize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbc {

/// Polynomial nonlinearity f(u). Constant and Linear are kept as named kinds
/// because the steady-state closed forms key off them.
struct Nonlinearity {
    enum class Kind { Zero, Constant, Linear, Polynomial };

    Kind kind = Kind::Zero;
    /// Constant: {c}. Polynomial: ascending-degree coefficients. Otherwise empty.
    std::vector<double> coefficients;

    static Nonlinearity zero() { return {Kind::Zero, {}}; }
    static Nonlinearity constant(double c) { return {Kind::Constant, {c}}; }
    static Nonlinearity linear() { return {Kind::Linear, {}}; }
    static Nonlinearity polynomial(std::vector<double> coeffs) {
        return {Kind::Polynomial, std::move(coeffs)};
    }

    double operator()(double u) const noexcept;
    bool is_constant(double c) const noexcept {
        return kind == Kind::Constant && coefficients.size() == 1 && coefficients[0] == c;
    }
};

double eval_f(const Nonlinearity& f, double u) noexcept;
std::string to_string(Nonlinearity::Kind kind);
Nonlinearity::Kind parse_nonlinearity_kind(const std::string& name);

/// Shape of the sine perturbation added to the steady state.
///  Half: sin(pi (u-a)/(b-a)), one positive hump.
///  Odd:  sin(2 pi (u-m)/(b-a)) with m the midpoint; odd about m, vanishing at a, m, b.
enum class SineMode { Half, Odd };

struct InitialData {
    enum class Kind { SteadyPlusSine, Explicit };

    Kind kind = Kind::SteadyPlusSine;
    double mu = 0.0;
    /// Unset: Odd when a == -b, Half otherwise.
    std::optional<SineMode> mode;
    /// Nodal values for Kind::Explicit.
    std::vector<double> values;

    static InitialData steady_plus_sine(double mu, std::optional<SineMode> mode = std::nullopt) {
        return {Kind::SteadyPlusSine, mu, mode, {}};
    }
    static InitialData explicit_values(std::vector<double> v) {
        return {Kind::Explicit, 0.0, std::nullopt, std::move(v)};
    }
};

struct ToleranceSet {
    double newton_or_step_tol = 1e-7;
    double eps_cauchy_tol = 1e-3;
    /// Relative: allowed increase of a monotone series is slack * |first value|.
    double monotonicity_slack = 1e-6;
    double steady_state_tol = 1e-3;
    double blowup_bracket_width = 1e-4;

    void validate() const;
};

struct ProblemSpec {
    double a = -2.0;
    double b = 2.0;
    Nonlinearity f = Nonlinearity::linear();
    InitialData initial;
    std::vector<double> eps_schedule{1e-2, 1e-3, 1e-4, 1e-5};
    int grid_cells = 400;
    double time_horizon = 60.0;
    ToleranceSet tolerances;
    /// Whether the odd-symmetry / curvature conditions are enforced on the
    /// initial data. Unset: on exactly for a == -b with f(u) = u.
    std::optional<bool> symmetric_conditions;

    /// Throws InvalidArgument on a broken invariant.
    void validate() const;
    Grid grid() const { return Grid(a, b, grid_cells); }
    bool symmetric_scenario() const noexcept;
    bool requires_symmetric_conditions() const noexcept {
        return symmetric_conditions.value_or(symmetric_scenario());
    }
    SineMode sine_mode() const noexcept;
};

/// The perturbation shape s(u) used by SteadyPlusSine on [a,b].
double sine_shape(SineMode mode, double a, double b, double u) noexcept;
/// s'(u), analytic.
double sine_shape_derivative(SineMode mode, double a, double b, double u) noexcept;

/// x0 on the spec grid. Throws MonotonicityViolation / SpecialConditionViolation.
Profile build_initial_data(const ProblemSpec& spec);

struct ConditionCheck {
    std::string name;
    bool pass = true;
    /// Informational checks are reported but never fail the report.
    bool informational = false;
    double worst_value = 0.0;
    double worst_location = 0.0;
    double tolerance = 0.0;
};

struct ValidationReport {
    std::vector<ConditionCheck> checks;
    /// sup |x0_uu - f| / x0_u^2 over the nodes.
    double curvature_quotient_sup = 0.0;

    bool all_pass() const noexcept;
    const ConditionCheck* find(const std::string& name) const noexcept;
};

ValidationReport validate_initial_data(const Profile& profile, const ProblemSpec& spec);

} // namespace gbc
