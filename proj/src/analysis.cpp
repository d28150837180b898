#include "gbc/analysis.hpp"

#include "gbc/energy.hpp"
#include "gbc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gbc {

namespace {

/// Largest amount by which a value exceeds the minimum of everything before it.
struct Rise {
    double amount = -std::numeric_limits<double>::infinity();
    std::size_t index = 0;
};

template <class Get>
Rise worst_rise(std::size_t count, Get&& get) {
    Rise r;
    if (count < 2) {
        r.amount = 0.0;
        return r;
    }
    double lowest = get(0);
    for (std::size_t j = 1; j < count; ++j) {
        const double v = get(j);
        if (v - lowest > r.amount) r = {v - lowest, j};
        lowest = std::min(lowest, v);
    }
    return r;
}

std::string at_time(double t) {
    std::ostringstream s;
    s << "worst at t=" << t;
    return s.str();
}

} // namespace

Verdict make_verdict(std::string check, double lhs, double rhs, double tolerance,
                     std::string detail) {
    Verdict v;
    v.check = std::move(check);
    v.lhs = lhs;
    v.rhs = rhs;
    v.tolerance = tolerance;
    v.pass = lhs <= rhs + tolerance;
    v.detail = std::move(detail);
    return v;
}

EnergyBounds energy_bounds(double M, const Nonlinearity& f, const Grid& grid) {
    std::vector<double> absf = sample_f(f, grid);
    for (double& v : absf) v = std::abs(v);
    EnergyBounds e;
    e.M = M;
    e.c1 = std::sqrt(grid.b() - grid.a()) * trapezoid(absf, grid.h());
    const double root = std::sqrt(std::max(0.0, e.c1 * e.c1 + 2.0 * M));
    e.I_bound = std::max(0.0, 2.0 * e.c1 * e.c1 + 2.0 * M + 2.0 * e.c1 * root);
    e.sup_bound = std::sqrt(grid.b() - grid.a()) * std::sqrt(e.I_bound);
    return e;
}

PoincareResult check_poincare(const Profile& p) {
    PoincareResult r;
    r.lhs = max_abs(p.values);
    const double I = dirichlet_integral(p.values, p.grid.h());
    r.rhs = std::sqrt(p.grid.b() - p.grid.a()) * std::sqrt(I);
    r.pass = r.lhs <= r.rhs * (1.0 + 1e-12);
    return r;
}

CoercivityResult check_coercivity(const Profile& p, const Nonlinearity& f) {
    CoercivityResult r;
    r.I = dirichlet_integral(p.values, p.grid.h());
    r.sup_norm = max_abs(p.values);
    r.bounds = energy_bounds(energy(p, f), f, p.grid);
    const double slack = 1e-12;
    r.pass = r.I <= r.bounds.I_bound * (1.0 + slack) + slack &&
             r.sup_norm <= r.bounds.sup_bound * (1.0 + slack) + slack;
    return r;
}

ConvergenceResult verify_convergence(const Trajectory& traj, const SteadyState& steady,
                                     double tol) {
    ConvergenceResult r;
    r.gaps.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots) r.gaps.push_back(c1_distance(s, steady.profile));
    r.pass = !r.gaps.empty() && r.gaps.back() < tol;
    return r;
}

std::vector<double> dissipation_tail(const Trajectory& traj) {
    std::vector<double> out;
    if (traj.snapshots.empty()) return out;
    const Grid& g = traj.snapshots.front().grid;
    const std::vector<double> f = sample_f(traj.spec.f, g);
    std::vector<double> d2(static_cast<std::size_t>(g.size()));
    out.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots) {
        diff2(s.values, g.h(), d2);
        for (std::size_t i = 0; i < d2.size(); ++i) d2[i] = std::abs(d2[i] - f[i]);
        const double l1 = trapezoid(d2, g.h());
        out.push_back(l1 * l1);
    }
    return out;
}

double tail_threshold(double a, double b, double tol) noexcept {
    const double r = tol / (1.0 + (b - a));
    return r * r;
}

std::optional<double> tail_stopping_time(const Trajectory& traj, double threshold) {
    const std::vector<double> tail = dissipation_tail(traj);
    for (std::size_t k = 0; k < tail.size(); ++k)
        if (tail[k] < threshold) return traj.snapshots[k].time;
    return std::nullopt;
}

double Bump::operator()(double s) const noexcept {
    if (!(s > lo && s < hi)) return 0.0;
    const double z = (2.0 * s - lo - hi) / (hi - lo);
    return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

double Bump::derivative(double s) const noexcept {
    if (!(s > lo && s < hi)) return 0.0;
    const double z = (2.0 * s - lo - hi) / (hi - lo);
    const double q = 1.0 - z * z;
    return (*this)(s) * (-2.0 * z / (q * q)) * (2.0 / (hi - lo));
}

double weak_residual(const Trajectory& traj, const Bump& psi, const Bump& chi) {
    if (traj.snapshots.size() < 2) throw InvalidArgument("weak_residual: needs two snapshots");
    const Grid& g = traj.snapshots.front().grid;
    const std::size_t n = static_cast<std::size_t>(g.size());
    const double h = g.h();
    const std::vector<double> f = sample_f(traj.spec.f, g);
    std::vector<double> w(n), dw(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = psi(g.node(static_cast<int>(i)));
        dw[i] = psi.derivative(g.node(static_cast<int>(i)));
    }

    std::vector<double> mid(n), d1(n), integrand(n);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < traj.snapshots.size(); ++k) {
        const auto& p = traj.snapshots[k];
        const auto& q = traj.snapshots[k + 1];
        const double dt = q.time - p.time;
        const double c = chi(0.5 * (p.time + q.time));
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (p[i] + q[i]);
        diff1(mid, h, d1);
        for (std::size_t i = 0; i < n; ++i) {
            const double xt = (q[i] - p[i]) / dt;
            integrand[i] =
                (d1[i] * d1[i] + traj.step_eps) * xt * w[i] + d1[i] * dw[i] + f[i] * w[i];
        }
        total += c * dt * trapezoid(integrand, h);
    }
    return std::abs(total);
}

Profile random_admissible_profile(const Grid& grid, std::mt19937_64& rng) {
    const std::size_t n = static_cast<std::size_t>(grid.size());
    const double a = grid.a(), b = grid.b();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = -1.0 + 2.0 * (grid.node(static_cast<int>(i)) - a) / (b - a);

    switch (static_cast<int>(unit(rng) * 3.0)) {
    case 0: {
        const int modes = 1 + static_cast<int>(unit(rng) * 8.0);
        const double scale = std::pow(10.0, 2.0 * unit(rng) - 1.0);
        for (int k = 1; k <= modes; ++k) {
            const double amp = scale * (2.0 * unit(rng) - 1.0) / k;
            for (std::size_t i = 1; i + 1 < n; ++i)
                v[i] += amp * std::sin(k * std::numbers::pi * (grid.node(static_cast<int>(i)) - a) / (b - a));
        }
        break;
    }
    case 1: {
        const double scale = std::pow(10.0, 2.0 * unit(rng) - 1.5);
        for (std::size_t i = 1; i + 1 < n; ++i) v[i] += scale * (2.0 * unit(rng) - 1.0);
        break;
    }
    default: {
        std::exponential_distribution<double> step(1.0);
        std::vector<double> inc(n - 1);
        double total = 0.0;
        for (double& d : inc) total += d = step(rng);
        double acc = -1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) v[i] = acc += 2.0 * inc[i - 1] / total;
        break;
    }
    }
    v.front() = -1.0;
    v.back() = 1.0;
    return Profile(grid, std::move(v), 0.0);
}

Verdict verify_energy_descent(const Trajectory& traj, double slack) {
    const auto& d = traj.diagnostics;
    const double e0 = energy(traj.snapshots.front(), traj.spec.f);
    double worst = -std::numeric_limits<double>::infinity();
    double where = 0.0;
    double prev = e0;
    for (const auto& r : d) {
        if (r.energy - prev > worst) {
            worst = r.energy - prev;
            where = r.t;
        }
        prev = r.energy;
    }
    if (d.empty()) worst = 0.0;
    return make_verdict("energy_descent", worst, 0.0, slack, at_time(where));
}

Verdict verify_dissipation_balance(const Trajectory& traj, double slack) {
    // E_k + D_k must not increase along snapshots, D_k = dissipation up to t_k.
    const auto& snaps = traj.snapshots;
    std::vector<double> level(snaps.size());
    std::size_t j = 0;
    double acc = 0.0;
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        while (j < traj.diagnostics.size() && traj.diagnostics[j].t <= snaps[k].time)
            acc += traj.diagnostics[j++].dissipation_increment;
        level[k] = energy(snaps[k], traj.spec.f) + acc;
    }
    const Rise r = worst_rise(level.size(), [&](std::size_t k) { return level[k]; });
    return make_verdict("dissipation_balance", r.amount, 0.0, slack,
                        at_time(snaps.empty() ? 0.0 : snaps[r.index].time));
}

Verdict verify_xt_monotone(const Trajectory& traj, double slack) {
    const auto& d = traj.diagnostics;
    const Rise r = worst_rise(d.size(), [&](std::size_t k) { return d[k].xt_maxnorm; });
    return make_verdict("xt_monotone", r.amount, 0.0, slack,
                        at_time(d.empty() ? 0.0 : d[r.index].t));
}

Verdict verify_xt_bound(const Trajectory& traj, double bound, double slack) {
    const double first = traj.diagnostics.empty() ? 0.0 : traj.diagnostics.front().xt_maxnorm;
    return make_verdict("xt_bound", first, bound, slack);
}

Verdict verify_odd_symmetry(const Trajectory& traj, double tol) {
    if (traj.spec.a != -traj.spec.b)
        throw InvalidArgument("verify_odd_symmetry: interval must be symmetric about 0");
    double worst = 0.0, where = 0.0;
    for (const auto& s : traj.snapshots) {
        const std::size_t n = s.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::abs(s[i] + s[n - 1 - i]);
            if (e > worst) {
                worst = e;
                where = s.time;
            }
        }
    }
    Verdict v = make_verdict("odd_symmetry", worst, 0.0, tol, at_time(where));
    v.pass = worst < tol;
    return v;
}

Verdict verify_nodal_decrease(const Trajectory& traj, double slack) {
    const auto& snaps = traj.snapshots;
    const Grid& g = snaps.front().grid;
    double worst = 0.0, where = 0.0;
    for (int i = 0; i < g.cells(); ++i) {
        if (g.node(i) < 0.0) continue;
        const auto idx = static_cast<std::size_t>(i);
        const Rise r = worst_rise(snaps.size(), [&](std::size_t k) { return snaps[k][idx]; });
        if (r.amount > worst) {
            worst = r.amount;
            where = snaps[r.index].time;
        }
    }
    return make_verdict("nodal_decrease", worst, 0.0, slack, at_time(where));
}

Verdict verify_xu_at_zero_monotone(const Trajectory& traj, double slack) {
    const auto& d = traj.diagnostics;
    if (!d.empty() && !d.front().xu_at_zero)
        throw InvalidArgument("verify_xu_at_zero_monotone: 0 is outside [a,b]");
    const Rise r = worst_rise(d.size(), [&](std::size_t k) { return *d[k].xu_at_zero; });
    return make_verdict("xu_at_zero_monotone", r.amount, 0.0, slack,
                        at_time(d.empty() ? 0.0 : d[r.index].t));
}

Verdict verify_no_reinversion(const Trajectory& traj, double t_from, double slack) {
    double worst = -std::numeric_limits<double>::infinity(), where = t_from;
    for (const auto& r : traj.diagnostics) {
        if (r.t < t_from) continue;
        if (!r.xu_at_zero) throw InvalidArgument("verify_no_reinversion: 0 is outside [a,b]");
        if (*r.xu_at_zero > worst) {
            worst = *r.xu_at_zero;
            where = r.t;
        }
    }
    return make_verdict("no_reinversion", worst, 0.0, slack, at_time(where));
}

Verdict verify_negative_excursion(const Trajectory& traj) {
    const Profile& p = traj.final_snapshot();
    double lowest = std::numeric_limits<double>::infinity(), where = 0.0;
    for (int i = 0; i < p.grid.size(); ++i) {
        const double u = p.grid.node(i);
        if (u < 0.0) continue;
        if (p[static_cast<std::size_t>(i)] < lowest) {
            lowest = p[static_cast<std::size_t>(i)];
            where = u;
        }
    }
    std::ostringstream s;
    s << "min at u=" << where;
    Verdict v = make_verdict("negative_excursion", lowest, 0.0, 0.0, s.str());
    v.pass = lowest < 0.0;
    return v;
}

} // namespace gbc
