#pragma once

#include "gbc/discretize.hpp"
#include "gbc/model.hpp"

#include <span>

namespace gbc {

/// sum_i h ((x_{i+1} - x_i)/h)^2, the exact integral of the squared slope of
/// the piecewise-linear interpolant.
double dirichlet_integral(std::span<const double> x, double h);

/// 1/2 * dirichlet_integral + trapezoid(f x). No admissibility check.
double energy_unchecked(std::span<const double> x, const Grid& grid, std::span<const double> f_nodes);

/// Energy F(x) = 1/2 int x_u^2 + int f x. Throws NotAdmissible unless x(a) = -1, x(b) = 1.
double energy(const Profile& p, const Nonlinearity& f);

std::vector<double> sample_f(const Nonlinearity& f, const Grid& grid);

} // namespace gbc
