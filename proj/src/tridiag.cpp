#include "gbc/tridiag.hpp"

#include "gbc/errors.hpp"

#include <cmath>

namespace gbc {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::span<double> scratch) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    double pivot = diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw SolveFailure("tridiagonal: zero pivot in row 0");
    scratch[0] = upper[0] / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * scratch[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) throw SolveFailure("tridiagonal: zero pivot");
        scratch[i] = (i + 1 < n) ? upper[i] / pivot : 0.0;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

} // namespace gbc
