#pragma once

#include "gbc/discretize.hpp"
#include "gbc/model.hpp"
#include "gbc/solver.hpp"
#include "gbc/steady.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gbc {

/// Outcome of one inequality check: pass iff lhs <= rhs + tolerance.
struct Verdict {
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    double tolerance = 0.0;
    std::string detail;
};

Verdict make_verdict(std::string check, double lhs, double rhs, double tolerance,
                     std::string detail = {});

/// A priori bounds for profiles with energy at most M.
struct EnergyBounds {
    double M = 0.0;
    /// sqrt(b - a) * int |f|
    double c1 = 0.0;
    double I_bound = 0.0;
    double sup_bound = 0.0;
};

EnergyBounds energy_bounds(double M, const Nonlinearity& f, const Grid& grid);

struct PoincareResult {
    /// max |p|
    double lhs = 0.0;
    /// sqrt(b - a) * ||p_u||_2
    double rhs = 0.0;
    bool pass = false;
};

PoincareResult check_poincare(const Profile& p);

struct CoercivityResult {
    /// int p_u^2
    double I = 0.0;
    double sup_norm = 0.0;
    EnergyBounds bounds;
    bool pass = false;
};

CoercivityResult check_coercivity(const Profile& p, const Nonlinearity& f);

struct ConvergenceResult {
    /// C^1 distance to the steady state at every snapshot.
    std::vector<double> gaps;
    bool pass = false;
};

ConvergenceResult verify_convergence(const Trajectory& traj, const SteadyState& steady, double tol);

/// (int |x_uu - f| du)^2 per snapshot.
std::vector<double> dissipation_tail(const Trajectory& traj);

/// Tail level below which the C^1 gap to the steady state is at most tol:
/// the gap is bounded by (1 + b - a) * sqrt(tail).
double tail_threshold(double a, double b, double tol) noexcept;

/// First snapshot time at which the tail drops below threshold.
std::optional<double> tail_stopping_time(const Trajectory& traj, double threshold);

/// Smooth bump supported on (lo, hi).
struct Bump {
    double lo = 0.0;
    double hi = 1.0;

    double operator()(double s) const noexcept;
    double derivative(double s) const noexcept;
};

/// Discrete residual of the weak identity
///   int int (x_u^2 + eps) x_t phi + int int x_u phi_u + int int f phi = 0
/// for phi(u, t) = psi(u) chi(t), from consecutive snapshots (midpoint in t,
/// trapezoid in u). eps is the run's step_eps.
double weak_residual(const Trajectory& traj, const Bump& psi, const Bump& chi);

/// Random profile with x(a) = -1, x(b) = 1, drawn from a mix of smooth sine
/// perturbations, nodal noise, and random monotone staircases.
Profile random_admissible_profile(const Grid& grid, std::mt19937_64& rng);

// Trajectory verifiers.

/// Energy along accepted steps never rises by more than slack.
Verdict verify_energy_descent(const Trajectory& traj, double slack = 1e-8);

/// F(t2) <= F(t1) - sum of dissipation increments over (t1, t2] + slack, all snapshot pairs.
Verdict verify_dissipation_balance(const Trajectory& traj, double slack);

/// ||x_t||_inf never exceeds an earlier value by more than slack.
Verdict verify_xt_monotone(const Trajectory& traj, double slack);

/// First ||x_t||_inf value at most bound + slack.
Verdict verify_xt_bound(const Trajectory& traj, double bound, double slack);

/// max_i |x(u_i) + x(-u_i)| over snapshots; needs a == -b.
Verdict verify_odd_symmetry(const Trajectory& traj, double tol = 1e-8);

/// Every node in [0, b) is nonincreasing in time across snapshots.
Verdict verify_nodal_decrease(const Trajectory& traj, double slack);

/// x_u(0, t) nonincreasing along the diagnostics.
Verdict verify_xu_at_zero_monotone(const Trajectory& traj, double slack);

/// x_u(0, t) <= 0 for every accepted step at or after t_from.
Verdict verify_no_reinversion(const Trajectory& traj, double t_from, double slack = 0.0);

/// min over u in [0, b] of the final snapshot is negative.
Verdict verify_negative_excursion(const Trajectory& traj);

} // namespace gbc
