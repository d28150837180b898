#include "gbc/steady.hpp"

#include "gbc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gbc {

std::string to_string(SteadyState::Provenance p) {
    switch (p) {
    case SteadyState::Provenance::ClosedFormLinear: return "closed_form_linear";
    case SteadyState::Provenance::ClosedFormConstant: return "closed_form_constant";
    case SteadyState::Provenance::NumericDoubleIntegration: return "numeric_double_integration";
    }
    return "unknown";
}

double steady_linear(double a, double b, double u) noexcept {
    return u * u * u / 6.0 + 2.0 * u / (b - a) - (b * b + a * b + a * a) * u / 6.0 +
           (-1.0 - 2.0 * a / (b - a) + (a * b * b + a * a * b) / 6.0);
}

double steady_linear_slope(double a, double b, double u) noexcept {
    return u * u / 2.0 + 2.0 / (b - a) - (b * b + a * b + a * a) / 6.0;
}

double steady_constant_one(double b, double u) noexcept {
    return u * u / 2.0 + (4.0 - b * b) / (2.0 * b) * u - 1.0;
}

double steady_constant_one_slope(double b, double u) noexcept {
    return u + (4.0 - b * b) / (2.0 * b);
}

namespace {

bool contains_zero(double a, double b) { return a <= 0.0 && 0.0 <= b; }

void pin_ends(std::vector<double>& v) {
    v.front() = -1.0;
    v.back() = 1.0;
}

} // namespace

SteadyState compute_steady_state_numeric(double a, double b, const Nonlinearity& f,
                                         const Grid& grid) {
    if (grid.a() != a || grid.b() != b)
        throw InvalidArgument("compute_steady_state: grid does not span [a,b]");
    const auto n = static_cast<std::size_t>(grid.size());
    const double h = grid.h();
    std::vector<double> fv(n), first(n, 0.0), second(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) fv[i] = f(grid.node(static_cast<int>(i)));
    for (std::size_t i = 1; i < n; ++i) first[i] = first[i - 1] + 0.5 * h * (fv[i - 1] + fv[i]);
    for (std::size_t i = 1; i < n; ++i)
        second[i] = second[i - 1] + 0.5 * h * (first[i - 1] + first[i]);

    // Linear correction enforcing x(a) = -1, x(b) = 1.
    const double slope_shift = (2.0 - second.back()) / (b - a);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = -1.0 + second[i] + slope_shift * (grid.node(static_cast<int>(i)) - a);
    pin_ends(x);

    std::optional<double> slope0;
    if (contains_zero(a, b)) {
        // Integrate f from the node left of zero up to zero with the same rule.
        const auto k = static_cast<std::size_t>(std::min<double>(
            static_cast<double>(grid.cells() - 1), std::floor((0.0 - a) / h)));
        const double uk = grid.node(static_cast<int>(k));
        const double first0 = first[k] + 0.5 * (0.0 - uk) * (fv[k] + f(0.0));
        slope0 = first0 + slope_shift;
    }
    return {Profile(grid, std::move(x)), SteadyState::Provenance::NumericDoubleIntegration,
            slope0};
}

SteadyState compute_steady_state(double a, double b, const Nonlinearity& f, const Grid& grid) {
    if (grid.a() != a || grid.b() != b)
        throw InvalidArgument("compute_steady_state: grid does not span [a,b]");
    if (f.kind == Nonlinearity::Kind::Linear) {
        auto p = Profile::sample(grid, [&](double u) { return steady_linear(a, b, u); });
        pin_ends(p.values);
        std::optional<double> s0;
        if (contains_zero(a, b)) s0 = steady_linear_slope(a, b, 0.0);
        return {std::move(p), SteadyState::Provenance::ClosedFormLinear, s0};
    }
    if (f.is_constant(1.0) && a == 0.0) {
        auto p = Profile::sample(grid, [&](double u) { return steady_constant_one(b, u); });
        pin_ends(p.values);
        return {std::move(p), SteadyState::Provenance::ClosedFormConstant,
                steady_constant_one_slope(b, 0.0)};
    }
    return compute_steady_state_numeric(a, b, f, grid);
}

} // namespace gbc
