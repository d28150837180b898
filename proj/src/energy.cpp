#include "gbc/energy.hpp"

#include "gbc/errors.hpp"

#include <cmath>
#include <sstream>

namespace gbc {

double dirichlet_integral(std::span<const double> x, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double d = x[i + 1] - x[i];
        s += d * d;
    }
    return s / h;
}

double energy_unchecked(std::span<const double> x, const Grid& grid,
                        std::span<const double> f_nodes) {
    const double h = grid.h();
    double fx = 0.5 * (f_nodes.front() * x.front() + f_nodes.back() * x.back());
    for (std::size_t i = 1; i + 1 < x.size(); ++i) fx += f_nodes[i] * x[i];
    return 0.5 * dirichlet_integral(x, h) + fx * h;
}

double energy(const Profile& p, const Nonlinearity& f) {
    constexpr double roundoff = 1e-12;
    if (std::abs(p.front() + 1.0) > roundoff || std::abs(p.back() - 1.0) > roundoff) {
        std::ostringstream msg;
        msg << "energy: boundary values (" << p.front() << ", " << p.back()
            << ") are not (-1, 1)";
        throw NotAdmissible(msg.str());
    }
    const auto fv = sample_f(f, p.grid);
    return energy_unchecked(p.values, p.grid, fv);
}

std::vector<double> sample_f(const Nonlinearity& f, const Grid& grid) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
    return v;
}

} // namespace gbc
