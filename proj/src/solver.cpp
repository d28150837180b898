#include "gbc/solver.hpp"

#include "gbc/energy.hpp"
#include "gbc/errors.hpp"
#include "gbc/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gbc {

namespace {

struct Controller {
    double tol = 1e-7;
    double max_step = std::numeric_limits<double>::infinity();
    double min_step = 0.0;
};

/// Step-doubling driver. Each attempt takes one step of size dt and two of
/// size dt/2; the pair of half steps is kept when max|full - half| <= tol.
/// on_accept(t_new, dt, x_old, x_half, x_new) runs before the state is
/// replaced and returns false to stop integration early.
template <class Stepper, class OnAccept>
bool advance(Stepper& stepper, std::vector<double>& x, double& t, double& dt, double t_stop,
             const Controller& ctl, OnAccept&& on_accept) {
    const std::size_t n = x.size();
    std::vector<double> full(n), half(n), next(n);
    while (t < t_stop) {
        double h = std::min(dt, ctl.max_step);
        const bool clipped = t + 1.001 * h >= t_stop;
        if (clipped) h = t_stop - t;

        stepper.step(x, h, full);
        stepper.step(x, 0.5 * h, half);
        stepper.step(half, 0.5 * h, next);
        const double err = max_abs_diff(full, next);
        const double factor =
            err > 0.0 ? std::clamp(0.9 * std::sqrt(ctl.tol / err), 0.2, 2.0) : 2.0;

        if (err <= ctl.tol) {
            const double t_new = clipped ? t_stop : t + h;
            const bool go = on_accept(t_new, h, x, half, next);
            x.swap(next);
            t = t_new;
            if (!clipped)
                dt = h * factor;
            else if (factor < 1.0)
                dt = std::min(dt, h * factor);
            if (!go) return false;
        } else {
            dt = h * factor;
            if (dt < ctl.min_step) {
                std::ostringstream msg;
                msg << "step size " << dt << " fell below " << ctl.min_step << " at t=" << t;
                throw StepSizeUnderflow(msg.str());
            }
        }
    }
    return true;
}

class XStepper {
public:
    XStepper(const Grid& grid, const Nonlinearity& f, double eps)
        : h_(grid.h()), eps_(eps), f_(sample_f(f, grid)) {
        const auto n = static_cast<std::size_t>(grid.size());
        lower_.resize(n);
        diag_.resize(n);
        upper_.resize(n);
        scratch_.resize(n);
    }

    void step(std::span<const double> in, double dt, std::span<double> out) {
        const std::size_t n = in.size();
        const double inv_h2 = 1.0 / (h_ * h_);
        diag_[0] = 1.0;
        upper_[0] = 0.0;
        out[0] = -1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double slope = (in[i + 1] - in[i - 1]) / (2.0 * h_);
            const double coeff = dt / (slope * slope + eps_);
            const double r = coeff * inv_h2;
            lower_[i] = -r;
            diag_[i] = 1.0 + 2.0 * r;
            upper_[i] = -r;
            out[i] = in[i] - coeff * f_[i];
        }
        lower_[n - 1] = 0.0;
        diag_[n - 1] = 1.0;
        out[n - 1] = 1.0;
        solve_tridiagonal(lower_, diag_, upper_, out, scratch_);
        out[0] = -1.0;
        out[n - 1] = 1.0;
    }

    std::span<const double> f_nodes() const { return f_; }

private:
    double h_;
    double eps_;
    std::vector<double> f_;
    std::vector<double> lower_, diag_, upper_, scratch_;
};

class UStepper {
public:
    UStepper(const Grid& grid, const Nonlinearity& f, double left, double right)
        : h_(grid.h()), f_(f), left_(left), right_(right) {
        const auto n = static_cast<std::size_t>(grid.size());
        lower_.resize(n);
        diag_.resize(n);
        upper_.resize(n);
        scratch_.resize(n);
    }

    void step(std::span<const double> in, double dt, std::span<double> out) {
        const std::size_t n = in.size();
        const double r = dt / (h_ * h_);
        diag_[0] = 1.0;
        upper_[0] = 0.0;
        out[0] = left_;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double ux = (in[i + 1] - in[i - 1]) / (2.0 * h_);
            lower_[i] = -r;
            diag_[i] = 1.0 + 2.0 * r;
            upper_[i] = -r;
            out[i] = in[i] + dt * f_(in[i]) * ux * ux * ux;
        }
        lower_[n - 1] = 0.0;
        diag_[n - 1] = 1.0;
        out[n - 1] = right_;
        solve_tridiagonal(lower_, diag_, upper_, out, scratch_);
        out[0] = left_;
        out[n - 1] = right_;
    }

private:
    double h_;
    Nonlinearity f_;
    double left_, right_;
    std::vector<double> lower_, diag_, upper_, scratch_;
};

double initial_step(double span) { return 1e-6 * std::max(1.0, span); }

/// Sorted output times strictly inside (t_start, t_end].
std::vector<double> usable_outputs(std::span<const double> output_times, double t_start,
                                   double t_end) {
    std::vector<double> out;
    for (double t : output_times)
        if (t > t_start && t <= t_end) out.push_back(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct SlopeScan {
    double min = 0.0;
    std::size_t argmin = 0;
};

SlopeScan scan_min(std::span<const double> d1) {
    SlopeScan s{d1[0], 0};
    for (std::size_t i = 1; i < d1.size(); ++i)
        if (d1[i] < s.min) s = {d1[i], i};
    return s;
}

std::optional<double> value_at_zero(const Grid& g, std::span<const double> v) {
    if (!(g.a() <= 0.0 && 0.0 <= g.b())) return std::nullopt;
    const int k = g.nearest(0.0);
    if (g.node(k) == 0.0) return v[static_cast<std::size_t>(k)];
    const int lo = g.node(k) < 0.0 ? k : k - 1;
    const double ul = g.node(lo), ur = g.node(lo + 1);
    const double w = (0.0 - ul) / (ur - ul);
    return (1.0 - w) * v[static_cast<std::size_t>(lo)] + w * v[static_cast<std::size_t>(lo + 1)];
}

double midpoint_dissipation(std::span<const double> x_old, std::span<const double> x_new,
                            double dt, double h, std::vector<double>& mid,
                            std::vector<double>& d1) {
    const std::size_t n = x_old.size();
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (x_old[i] + x_new[i]);
    diff1(mid, h, d1);
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = (x_new[i] - x_old[i]) / dt;
        s += d1[i] * d1[i] * v * v;
    }
    // trapezoid: x_t vanishes at both ends
    return s * h * dt;
}

Controller x_controller(const ProblemSpec& spec, double t_end) {
    Controller c;
    c.tol = spec.tolerances.newton_or_step_tol;
    c.min_step = 1e-14 * t_end;
    c.max_step = std::max(t_end / 100.0, 1e-12);
    return c;
}

/// Integrates x from t_from to t_to without recording anything.
std::vector<double> integrate_quiet(const ProblemSpec& spec, double eps, std::vector<double> x,
                                    double t_from, double t_to) {
    const Grid g = spec.grid();
    XStepper stepper(g, spec.f, eps);
    Controller ctl = x_controller(spec, spec.time_horizon);
    ctl.max_step = std::max(t_to - t_from, 1e-300);
    double t = t_from;
    double dt = initial_step(t_to - t_from);
    advance(stepper, x, t, dt, t_to, ctl,
            [](double, double, std::span<const double>, std::span<const double>,
               std::span<const double>) { return true; });
    return x;
}

} // namespace

const Profile* Trajectory::snapshot_at(double t) const noexcept {
    for (const auto& s : snapshots)
        if (s.time == t) return &s;
    return nullptr;
}

double c1_distance(const Profile& p, const Profile& q) {
    if (!(p.grid == q.grid)) throw InvalidArgument("c1_distance: grid mismatch");
    std::vector<double> diff(p.size()), d1(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - q[i];
    diff1(diff, p.grid.h(), d1);
    return max_abs(diff) + max_abs(d1);
}

Profile step_x_eps(const Profile& current, const Nonlinearity& f, double eps, double dt) {
    if (!(eps > 0.0)) throw InvalidArgument("step_x_eps: eps must be positive");
    if (!(dt > 0.0)) throw InvalidArgument("step_x_eps: dt must be positive");
    if (current.front() != -1.0 || current.back() != 1.0)
        throw InvalidArgument("step_x_eps: boundary values must be -1 and 1");
    XStepper stepper(current.grid, f, eps);
    std::vector<double> out(current.size());
    stepper.step(current.values, dt, out);
    return Profile(current.grid, std::move(out), current.time + dt);
}

Trajectory solve_x_eps_from(const ProblemSpec& spec, const Profile& start, double eps,
                            double t_end, std::span<const double> output_times) {
    if (!(eps > 0.0)) throw InvalidArgument("solve_x_eps: eps must be positive");
    if (!(start.grid == spec.grid())) throw InvalidArgument("solve_x_eps: grid mismatch");
    if (!(t_end > start.time)) throw InvalidArgument("solve_x_eps: t_end must exceed start time");

    const Grid g = spec.grid();
    const double h = g.h();
    const std::size_t n = start.size();
    XStepper stepper(g, spec.f, eps);
    const Controller ctl = x_controller(spec, t_end);

    Trajectory traj;
    traj.spec = spec;
    traj.eps = eps;
    traj.step_eps = eps;
    traj.snapshots.push_back(start);

    std::vector<double> x = start.values;
    std::vector<double> mid(n), d1(n);
    double t = start.time;
    double dt = initial_step(t_end - start.time);

    auto record = [&](double t_new, double step, std::span<const double> x_old,
                      std::span<const double> x_half, std::span<const double> x_new) {
        const double sub = 0.5 * step;
        DiagnosticsRecord rec;
        rec.t = t_new;
        rec.dissipation_increment = midpoint_dissipation(x_old, x_half, sub, h, mid, d1) +
                                    midpoint_dissipation(x_half, x_new, sub, h, mid, d1);
        double vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            vmax = std::max(vmax, std::abs(x_new[i] - x_half[i]) / sub);
        rec.xt_maxnorm = vmax;
        rec.energy = energy_unchecked(x_new, g, stepper.f_nodes());
        diff1(x_new, h, d1);
        const SlopeScan s = scan_min(d1);
        rec.min_xu = s.min;
        rec.argmin_xu = g.node(static_cast<int>(s.argmin));
        rec.xu_at_zero = value_at_zero(g, d1);
        traj.diagnostics.push_back(rec);
        return true;
    };

    for (double t_out : usable_outputs(output_times, start.time, t_end)) {
        advance(stepper, x, t, dt, t_out, ctl, record);
        traj.snapshots.emplace_back(g, x, t_out);
    }
    if (t < t_end) advance(stepper, x, t, dt, t_end, ctl, record);
    return traj;
}

Trajectory solve_x_eps(const ProblemSpec& spec, double eps, double t_end,
                       std::span<const double> output_times) {
    const Profile x0 = build_initial_data(spec);
    return solve_x_eps_from(spec, x0, eps, t_end, output_times);
}

EpsContinuation run_eps_continuation(const ProblemSpec& spec, double t_end,
                                     std::span<const double> output_times) {
    spec.validate();
    const Profile x0 = build_initial_data(spec);
    EpsContinuation cont;
    for (double eps : spec.eps_schedule)
        cont.runs.push_back(solve_x_eps_from(spec, x0, eps, t_end, output_times));

    for (std::size_t r = 0; r + 1 < cont.runs.size(); ++r) {
        const auto& coarse = cont.runs[r];
        const auto& fine = cont.runs[r + 1];
        double gap = 0.0;
        for (const auto& s : coarse.snapshots)
            if (const Profile* other = fine.snapshot_at(s.time))
                gap = std::max(gap, c1_distance(s, *other));
        cont.cauchy_gaps.push_back(gap);
    }
    return cont;
}

Trajectory accept_limit(const EpsContinuation& cont, const ProblemSpec& spec) {
    if (cont.runs.empty()) throw InvalidArgument("accept_limit: no runs");
    const double last = cont.cauchy_gaps.empty() ? 0.0 : cont.cauchy_gaps.back();
    if (!(last < spec.tolerances.eps_cauchy_tol)) {
        std::ostringstream msg;
        msg << "eps continuation not Cauchy: final gap " << last << " >= "
            << spec.tolerances.eps_cauchy_tol;
        throw NotCauchy(msg.str(), last);
    }
    Trajectory limit = cont.runs.back();
    limit.eps = 0.0;
    return limit;
}

std::pair<Trajectory, EpsContinuation> solve_x_limit(const ProblemSpec& spec, double t_end,
                                                     std::span<const double> output_times) {
    if (spec.eps_schedule.size() < 3)
        throw InvalidArgument("solve_x_limit: eps_schedule needs at least three entries");
    EpsContinuation cont = run_eps_continuation(spec, t_end, output_times);
    Trajectory limit = accept_limit(cont, spec);
    return {std::move(limit), std::move(cont)};
}

std::optional<BlowupReport> detect_blowup(const Trajectory& traj) {
    if (traj.diagnostics.empty()) throw InvalidArgument("detect_blowup: no diagnostics");
    const auto& diags = traj.diagnostics;
    std::size_t k = 0;
    while (k < diags.size() && diags[k].min_xu > 0.0) ++k;
    if (k == diags.size()) return std::nullopt;

    const ProblemSpec& spec = traj.spec;
    const Grid g = spec.grid();
    const double h = g.h();
    const std::size_t n = static_cast<std::size_t>(g.size());
    std::vector<double> d1(n);
    auto min_slope = [&](const std::vector<double>& x) {
        diff1(x, h, d1);
        return scan_min(d1);
    };

    const double t_prev = k > 0 ? diags[k - 1].t : 0.0;
    const Profile* start = nullptr;
    for (auto it = traj.snapshots.rbegin(); it != traj.snapshots.rend(); ++it) {
        if (it->time <= t_prev && min_slope(it->values).min > 0.0) {
            start = &*it;
            break;
        }
    }
    if (start == nullptr) start = &traj.snapshots.front();

    double t_lo = start->time;
    std::vector<double> lo_state = start->values;
    double t_hi = diags[k].t;
    std::vector<double> hi_state = integrate_quiet(spec, traj.step_eps, lo_state, t_lo, t_hi);
    // A different step sequence can shift the event slightly; push the upper end out.
    for (int tries = 0; min_slope(hi_state).min > 0.0; ++tries) {
        if (tries == 60) return std::nullopt;
        const double next = t_hi + std::max(t_hi - t_lo, spec.tolerances.blowup_bracket_width);
        lo_state = hi_state;
        t_lo = t_hi;
        hi_state = integrate_quiet(spec, traj.step_eps, lo_state, t_lo, next);
        t_hi = next;
    }

    const double width = spec.tolerances.blowup_bracket_width;
    while (t_hi - t_lo > width) {
        const double mid = 0.5 * (t_lo + t_hi);
        auto mid_state = integrate_quiet(spec, traj.step_eps, lo_state, t_lo, mid);
        if (min_slope(mid_state).min <= 0.0) {
            t_hi = mid;
            hi_state = std::move(mid_state);
        } else {
            t_lo = mid;
            lo_state = std::move(mid_state);
        }
    }

    BlowupReport rep;
    rep.bracket = {t_lo, t_hi};
    rep.t0 = 0.5 * (t_lo + t_hi);
    const std::size_t at = min_slope(hi_state).argmin;
    rep.zero_location = g.node(static_cast<int>(at));
    rep.x_location = hi_state[at];
    rep.pre_t0_min_xu = min_slope(lo_state).min;
    return rep;
}

USolution solve_u(const Profile& u0, const Nonlinearity& f, double t_end, double gradient_cap,
                  std::span<const double> output_times, double step_tol) {
    const Grid& g = u0.grid;
    if (g.a() != -1.0 || g.b() != 1.0) throw InvalidArgument("solve_u: grid must span [-1,1]");
    if (!(t_end > u0.time)) throw InvalidArgument("solve_u: t_end must exceed start time");
    if (!(gradient_cap > 0.0)) throw InvalidArgument("solve_u: gradient_cap must be positive");

    const double h = g.h();
    const std::size_t n = u0.size();
    UStepper stepper(g, f, u0.front(), u0.back());
    Controller ctl;
    ctl.tol = step_tol;
    ctl.min_step = 1e-14 * t_end;
    ctl.max_step = t_end / 100.0;

    USolution sol;
    sol.snapshots.push_back(u0);
    std::vector<double> u = u0.values;
    std::vector<double> d1(n);
    double t = u0.time;
    double dt = initial_step(t_end - u0.time);

    auto record = [&](double t_new, double, std::span<const double>, std::span<const double>,
                      std::span<const double> u_new) {
        diff1(u_new, h, d1);
        const double gmax = max_abs(d1);
        sol.step_times.push_back(t_new);
        sol.max_gradient.push_back(gmax);
        if (gmax > gradient_cap) {
            sol.halt_time = t_new;
            return false;
        }
        return true;
    };

    for (double t_out : usable_outputs(output_times, u0.time, t_end)) {
        if (!advance(stepper, u, t, dt, t_out, ctl, record)) return sol;
        sol.snapshots.emplace_back(g, u, t_out);
    }
    if (t < t_end) advance(stepper, u, t, dt, t_end, ctl, record);
    return sol;
}

} // namespace gbc
