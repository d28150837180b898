#pragma once

#include <span>

namespace gbc {

/// Thomas algorithm for a tridiagonal system, no pivoting.
///
/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored. The solution overwrites rhs, and
/// scratch (size n) holds the modified super-diagonal.
/// Throws SolveFailure on a vanishing pivot.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::span<double> scratch);

} // namespace gbc
