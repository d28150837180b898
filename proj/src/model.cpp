#include "gbc/model.hpp"

#include "gbc/errors.hpp"
#include "gbc/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gbc {

double Nonlinearity::operator()(double u) const noexcept {
    switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return coefficients.empty() ? 0.0 : coefficients[0];
    case Kind::Linear: return u;
    case Kind::Polynomial: {
        double acc = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * u + *it;
        return acc;
    }
    }
    return 0.0;
}

double eval_f(const Nonlinearity& f, double u) noexcept { return f(u); }

std::string to_string(Nonlinearity::Kind kind) {
    switch (kind) {
    case Nonlinearity::Kind::Zero: return "zero";
    case Nonlinearity::Kind::Constant: return "constant";
    case Nonlinearity::Kind::Linear: return "linear";
    case Nonlinearity::Kind::Polynomial: return "polynomial";
    }
    return "unknown";
}

Nonlinearity::Kind parse_nonlinearity_kind(const std::string& name) {
    if (name == "zero") return Nonlinearity::Kind::Zero;
    if (name == "constant") return Nonlinearity::Kind::Constant;
    if (name == "linear") return Nonlinearity::Kind::Linear;
    if (name == "polynomial") return Nonlinearity::Kind::Polynomial;
    throw InvalidArgument("unknown nonlinearity kind '" + name + "'");
}

void ToleranceSet::validate() const {
    for (double v : {newton_or_step_tol, eps_cauchy_tol, monotonicity_slack, steady_state_tol,
                     blowup_bracket_width})
        if (!(v > 0.0)) throw InvalidArgument("tolerances must be strictly positive");
}

void ProblemSpec::validate() const {
    if (!(a < b)) throw InvalidArgument("ProblemSpec: requires a < b");
    if (grid_cells < 16) throw InvalidArgument("ProblemSpec: grid_cells must be >= 16");
    if (eps_schedule.empty()) throw InvalidArgument("ProblemSpec: eps_schedule is empty");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0))
            throw InvalidArgument("ProblemSpec: eps_schedule entries must be positive");
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
            throw InvalidArgument("ProblemSpec: eps_schedule must be strictly decreasing");
    }
    if (!(time_horizon > 0.0)) throw InvalidArgument("ProblemSpec: time_horizon must be positive");
    if (f.kind == Nonlinearity::Kind::Constant && f.coefficients.size() != 1)
        throw InvalidArgument("ProblemSpec: constant nonlinearity needs exactly one coefficient");
    if (initial.kind == InitialData::Kind::Explicit &&
        initial.values.size() != static_cast<std::size_t>(grid_cells) + 1)
        throw InvalidArgument("ProblemSpec: explicit initial data must have grid_cells+1 values");
    tolerances.validate();
}

bool ProblemSpec::symmetric_scenario() const noexcept {
    return a == -b && f.kind == Nonlinearity::Kind::Linear;
}

SineMode ProblemSpec::sine_mode() const noexcept {
    if (initial.mode) return *initial.mode;
    return a == -b ? SineMode::Odd : SineMode::Half;
}

double sine_shape(SineMode mode, double a, double b, double u) noexcept {
    constexpr double pi = std::numbers::pi;
    if (mode == SineMode::Half) return std::sin(pi * (u - a) / (b - a));
    const double mid = 0.5 * (a + b);
    return std::sin(2.0 * pi * (u - mid) / (b - a));
}

double sine_shape_derivative(SineMode mode, double a, double b, double u) noexcept {
    constexpr double pi = std::numbers::pi;
    if (mode == SineMode::Half) {
        const double k = pi / (b - a);
        return k * std::cos(k * (u - a));
    }
    const double k = 2.0 * pi / (b - a);
    return k * std::cos(k * (u - 0.5 * (a + b)));
}

namespace {

struct Worst {
    double value = -std::numeric_limits<double>::infinity();
    double location = 0.0;
    void offer(double v, double u) {
        if (v > value) {
            value = v;
            location = u;
        }
    }
};

double compatibility_tolerance(const Grid& g, const Nonlinearity& f) {
    double fmax = 0.0;
    for (double u : g.nodes()) fmax = std::max(fmax, std::abs(f(u)));
    return 10.0 * g.h() * g.h() * (1.0 + fmax);
}

} // namespace

ValidationReport validate_initial_data(const Profile& profile, const ProblemSpec& spec) {
    const Grid& g = profile.grid;
    if (!(g == spec.grid())) throw InvalidArgument("validate_initial_data: grid mismatch");
    const auto& x = profile.values;
    const std::size_t n = x.size();
    ValidationReport report;

    {
        ConditionCheck c{"boundary_values"};
        c.tolerance = 0.0;
        const double ea = std::abs(x.front() + 1.0);
        const double eb = std::abs(x.back() - 1.0);
        c.worst_value = std::max(ea, eb);
        c.worst_location = ea >= eb ? g.a() : g.b();
        c.pass = ea == 0.0 && eb == 0.0;
        report.checks.push_back(c);
    }
    {
        ConditionCheck c{"strictly_increasing"};
        double min_step = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double d = x[i + 1] - x[i];
            if (d < min_step) {
                min_step = d;
                c.worst_location = g.node(static_cast<int>(i));
            }
        }
        c.worst_value = min_step;
        c.pass = min_step > 0.0;
        report.checks.push_back(c);
    }

    std::vector<double> d1(n), d2(n);
    diff1(x, g.h(), d1);
    diff2(x, g.h(), d2);
    const double fa = spec.f(g.a());
    const double fb = spec.f(g.b());
    {
        ConditionCheck c{"compatibility"};
        c.tolerance = compatibility_tolerance(g, spec.f);
        const double ea = std::abs(d2.front() - fa);
        const double eb = std::abs(d2.back() - fb);
        c.worst_value = std::max(ea, eb);
        c.worst_location = ea >= eb ? g.a() : g.b();
        c.pass = c.worst_value <= c.tolerance;
        report.checks.push_back(c);
    }
    {
        // x0_uu(a) = a, x0_uu(b) = b read literally; coincides with compatibility for f(u) = u.
        ConditionCheck c{"literal_endpoint_curvature"};
        c.informational = true;
        c.tolerance = compatibility_tolerance(g, spec.f);
        const double ea = std::abs(d2.front() - g.a());
        const double eb = std::abs(d2.back() - g.b());
        c.worst_value = std::max(ea, eb);
        c.worst_location = ea >= eb ? g.a() : g.b();
        c.pass = c.worst_value <= c.tolerance;
        report.checks.push_back(c);
    }

    if (spec.requires_symmetric_conditions()) {
        ConditionCheck odd{"odd_symmetry"};
        odd.tolerance = 1e-12;
        Worst wo;
        for (std::size_t i = 0; i < n; ++i) wo.offer(std::abs(x[i] + x[n - 1 - i]), g.node(static_cast<int>(i)));
        odd.worst_value = wo.value;
        odd.worst_location = wo.location;
        odd.pass = wo.value <= odd.tolerance;
        report.checks.push_back(odd);

        ConditionCheck curv{"curvature_bound"};
        curv.tolerance = 1e-8;
        Worst wc;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double u = g.node(static_cast<int>(i));
            if (u > 0.0 && u < g.b()) wc.offer(d2[i] - u, u);
        }
        curv.worst_value = wc.value;
        curv.worst_location = wc.location;
        curv.pass = wc.value <= curv.tolerance;
        report.checks.push_back(curv);
    }

    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = std::abs(d2[i] - spec.f(g.node(static_cast<int>(i)))) / (d1[i] * d1[i]);
        sup = std::max(sup, q);
    }
    report.curvature_quotient_sup = sup;
    return report;
}

bool ValidationReport::all_pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ConditionCheck& c) { return c.informational || c.pass; });
}

const ConditionCheck* ValidationReport::find(const std::string& name) const noexcept {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

Profile build_initial_data(const ProblemSpec& spec) {
    spec.validate();
    const Grid g = spec.grid();
    std::vector<double> x;
    if (spec.initial.kind == InitialData::Kind::Explicit) {
        x = spec.initial.values;
    } else {
        const SteadyState steady = compute_steady_state(spec.a, spec.b, spec.f, g);
        const SineMode mode = spec.sine_mode();
        x = steady.profile.values;
        for (int i = 1; i < g.cells(); ++i)
            x[static_cast<std::size_t>(i)] +=
                spec.initial.mu * sine_shape(mode, spec.a, spec.b, g.node(i));
        x.front() = -1.0;
        x.back() = 1.0;
    }
    Profile p(g, std::move(x), 0.0);

    const ValidationReport report = validate_initial_data(p, spec);
    if (const auto* c = report.find("strictly_increasing"); c && !c->pass) {
        std::ostringstream msg;
        msg << "initial data not strictly increasing: forward difference " << c->worst_value
            << " at u=" << c->worst_location;
        throw MonotonicityViolation(msg.str());
    }
    for (const char* name : {"odd_symmetry", "curvature_bound"}) {
        if (const auto* c = report.find(name); c && !c->pass) {
            std::ostringstream msg;
            msg << "initial data violates " << name << ": " << c->worst_value << " at u="
                << c->worst_location;
            throw SpecialConditionViolation(msg.str());
        }
    }
    return p;
}

} // namespace gbc
