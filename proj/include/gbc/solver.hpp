#pragma once

#include "gbc/discretize.hpp"
#include "gbc/model.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gbc {

/// Per accepted step of the x-solver.
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;
    /// max |x_t| over the nodes, from the last backward-Euler sub-step.
    double xt_maxnorm = 0.0;
    double min_xu = 0.0;
    double argmin_xu = 0.0;
    /// x_u at u = 0, when 0 lies in [a,b].
    std::optional<double> xu_at_zero;
    /// int int x_u^2 x_t^2 over the step (trapezoid in u, midpoint in t).
    double dissipation_increment = 0.0;
};

struct Trajectory {
    /// snapshots[0] is the initial profile at t = 0.
    std::vector<Profile> snapshots;
    std::vector<DiagnosticsRecord> diagnostics;
    ProblemSpec spec;
    /// Regularization of this run; 0 marks the accepted limit of a continuation.
    double eps = 0.0;
    /// Regularization the integrator actually used (equals eps unless eps == 0).
    double step_eps = 0.0;

    const Profile& final_snapshot() const { return snapshots.back(); }
    /// Snapshot at exactly time t, if one was emitted.
    const Profile* snapshot_at(double t) const noexcept;
};

struct BlowupReport {
    double t0 = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    /// Node abscissa of the first nonpositive x_u.
    double zero_location = 0.0;
    /// x at zero_location at the bracket's right end: where the u-graph steepens.
    double x_location = 0.0;
    double pre_t0_min_xu = 0.0;
};

struct EpsContinuation {
    /// Ordered by decreasing eps.
    std::vector<Trajectory> runs;
    /// C^1 gaps between consecutive runs, max over matched snapshot times.
    std::vector<double> cauchy_gaps;
};

/// Discrete C^1 distance ||p - q||_inf + ||p_u - q_u||_inf on a shared grid.
double c1_distance(const Profile& p, const Profile& q);

/// One semi-implicit backward-Euler step of x_t = (x_uu - f)/(x_u^2 + eps):
/// coefficient frozen at the current level, x_uu implicit, ends held at -1 and 1.
Profile step_x_eps(const Profile& current, const Nonlinearity& f, double eps, double dt);

/// Adaptive integration from the spec's initial data. output_times outside
/// (0, t_end] are ignored; the integrator lands exactly on each of them.
Trajectory solve_x_eps(const ProblemSpec& spec, double eps, double t_end,
                       std::span<const double> output_times);

/// As solve_x_eps, starting from an arbitrary admissible profile at start.time.
Trajectory solve_x_eps_from(const ProblemSpec& spec, const Profile& start, double eps,
                            double t_end, std::span<const double> output_times);

/// Runs every eps of the schedule and measures consecutive Cauchy gaps. Never throws NotCauchy.
EpsContinuation run_eps_continuation(const ProblemSpec& spec, double t_end,
                                     std::span<const double> output_times);

/// The smallest-eps run relabelled eps = 0 when the last gap is below
/// tolerances.eps_cauchy_tol, else NotCauchy.
Trajectory accept_limit(const EpsContinuation& cont, const ProblemSpec& spec);

/// Continuation plus acceptance: returns the smallest-eps run (with eps = 0)
/// when the last gap is below tolerances.eps_cauchy_tol, else throws NotCauchy.
std::pair<Trajectory, EpsContinuation> solve_x_limit(const ProblemSpec& spec, double t_end,
                                                     std::span<const double> output_times);

/// First time min x_u <= 0, bracketed by bisection on re-integrated steps.
std::optional<BlowupReport> detect_blowup(const Trajectory& traj);

struct USolution {
    std::vector<Profile> snapshots;
    std::vector<double> step_times;
    /// max |u_x| after each accepted step.
    std::vector<double> max_gradient;
    /// First time max |u_x| exceeded the cap.
    std::optional<double> halt_time;
};

/// u_t = u_xx + f(u) u_x^3 on [-1,1] with the boundary values of u0, u_xx
/// implicit and the cubic term explicit, step-doubling error control.
USolution solve_u(const Profile& u0, const Nonlinearity& f, double t_end, double gradient_cap,
                  std::span<const double> output_times, double step_tol = 1e-7);

} // namespace gbc
