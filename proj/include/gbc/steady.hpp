#pragma once

#include "gbc/discretize.hpp"
#include "gbc/model.hpp"

#include <optional>

namespace gbc {

/// Minimizer of the energy on the admissible set: x_uu = f, x(a) = -1, x(b) = 1.
struct SteadyState {
    enum class Provenance { ClosedFormLinear, ClosedFormConstant, NumericDoubleIntegration };

    Profile profile;
    Provenance provenance;
    /// x_u(0) when 0 lies in [a,b].
    std::optional<double> slope_at_zero;
};

std::string to_string(SteadyState::Provenance p);

/// Closed form for f(u) = u on [a,b].
double steady_linear(double a, double b, double u) noexcept;
double steady_linear_slope(double a, double b, double u) noexcept;
/// Closed form for f = 1 on [0,b].
double steady_constant_one(double b, double u) noexcept;
double steady_constant_one_slope(double b, double u) noexcept;

SteadyState compute_steady_state(double a, double b, const Nonlinearity& f, const Grid& grid);
/// Double cumulative trapezoid route, regardless of f.
SteadyState compute_steady_state_numeric(double a, double b, const Nonlinearity& f,
                                         const Grid& grid);

} // namespace gbc
