#include "gbc/discretize.hpp"

#include "gbc/errors.hpp"

// boost 1.74 pchip calls isnan unqualified
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gbc {

Grid::Grid(double a, double b, int n) : a_(a), b_(b), n_(n), h_(0.0) {
    if (!(a < b)) throw InvalidArgument("Grid: requires a < b");
    if (n < 1) throw InvalidArgument("Grid: requires at least one cell");
    h_ = (b - a) / n;
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        nodes_[static_cast<std::size_t>(i)] = ((n - i) * a + i * b) / n;
    nodes_.front() = a;
    nodes_.back() = b;
}

int Grid::nearest(double u) const noexcept {
    const double s = std::round((u - a_) / h_);
    return static_cast<int>(std::clamp(s, 0.0, static_cast<double>(n_)));
}

Profile::Profile(Grid g, std::vector<double> v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
    if (values.size() != static_cast<std::size_t>(grid.size()))
        throw InvalidArgument("Profile: value count does not match grid");
    for (double x : values)
        if (!std::isfinite(x)) throw InvalidArgument("Profile: non-finite value");
}

void diff1(std::span<const double> p, double h, std::span<double> out) {
    const std::size_t m = p.size();
    if (m < 3) throw InvalidArgument("diff1: needs at least two cells");
    out[0] = (-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < m; ++i) out[i] = (p[i + 1] - p[i - 1]) / (2.0 * h);
    out[m - 1] = (3.0 * p[m - 1] - 4.0 * p[m - 2] + p[m - 3]) / (2.0 * h);
}

void diff2(std::span<const double> p, double h, std::span<double> out) {
    const std::size_t m = p.size();
    if (m < 4) throw InvalidArgument("diff2: needs at least three cells");
    const double h2 = h * h;
    out[0] = (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3]) / h2;
    for (std::size_t i = 1; i + 1 < m; ++i) out[i] = (p[i - 1] - 2.0 * p[i] + p[i + 1]) / h2;
    out[m - 1] = (2.0 * p[m - 1] - 5.0 * p[m - 2] + 4.0 * p[m - 3] - p[m - 4]) / h2;
}

double trapezoid(std::span<const double> p, double h) {
    if (p.size() < 2) return 0.0;
    double s = 0.5 * (p.front() + p.back());
    for (std::size_t i = 1; i + 1 < p.size(); ++i) s += p[i];
    return s * h;
}

Profile diff1(const Profile& p) {
    std::vector<double> out(p.size());
    diff1(p.values, p.grid.h(), out);
    return Profile(p.grid, std::move(out), p.time);
}

Profile diff2(const Profile& p) {
    std::vector<double> out(p.size());
    diff2(p.values, p.grid.h(), out);
    return Profile(p.grid, std::move(out), p.time);
}

double trapezoid(const Profile& p) { return trapezoid(p.values, p.grid.h()); }

std::vector<double> invert_monotone(const Profile& p, std::span<const double> targets) {
    const auto& v = p.values;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!(v[i + 1] > v[i])) {
            std::ostringstream msg;
            msg << "invert_monotone: forward difference " << v[i + 1] - v[i] << " <= 0 at u="
                << p.grid.node(static_cast<int>(i));
            throw NotMonotone(msg.str());
        }
    }
    const auto nodes = p.grid.nodes();
    boost::math::interpolators::pchip<std::vector<double>> spline(
        std::vector<double>(nodes.begin(), nodes.end()), std::vector<double>(v));

    std::vector<double> result;
    result.reserve(targets.size());
    for (double y : targets) {
        if (y < v.front() || y > v.back()) {
            std::ostringstream msg;
            msg << "invert_monotone: target " << y << " outside [" << v.front() << ", " << v.back()
                << "]";
            throw OutOfRange(msg.str());
        }
        // first node with value >= y
        const auto it = std::lower_bound(v.begin(), v.end(), y);
        const auto hi = static_cast<std::size_t>(it - v.begin());
        if (*it == y) {
            result.push_back(nodes[hi]);
            continue;
        }
        double lo_u = nodes[hi - 1];
        double hi_u = nodes[hi];
        while (hi_u - lo_u > 1e-12) {
            const double mid = 0.5 * (lo_u + hi_u);
            if (spline(mid) < y)
                lo_u = mid;
            else
                hi_u = mid;
        }
        result.push_back(0.5 * (lo_u + hi_u));
    }
    return result;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(std::span<const double> p, std::span<const double> q) {
    double m = 0.0;
    const std::size_t k = std::min(p.size(), q.size());
    for (std::size_t i = 0; i < k; ++i) m = std::max(m, std::abs(p[i] - q[i]));
    return m;
}

} // namespace gbc
