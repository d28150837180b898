#include "gbc/cli.hpp"

#include "gbc/energy.hpp"
#include "gbc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

namespace gbc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const double kCubeRootSix = std::cbrt(6.0);
// absolute floor for checks whose relative slack collapses on stationary runs
constexpr double kRoundoff = 1e-10;

std::vector<double> run_outputs(const RunConfig& cfg) {
    const double t_end = cfg.spec.time_horizon;
    std::vector<double> outs =
        cfg.output_times.empty() ? default_output_times(t_end) : cfg.output_times;
    for (double t : cfg.graph_times)
        if (t > 0.0 && t <= t_end) outs.push_back(t);
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    return outs;
}

/// Config problems surface as ConfigError whatever layer found them.
void check_config(const RunConfig& cfg) {
    try {
        cfg.spec.validate();
        build_initial_data(cfg.spec);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

Verdict failing_count(std::string name, std::size_t failures, std::size_t total) {
    Verdict v = make_verdict(std::move(name), static_cast<double>(failures), 0.0, 0.0);
    v.detail = std::to_string(failures) + " of " + std::to_string(total) + " failed";
    return v;
}

void report(const std::vector<Verdict>& verdicts, std::ostream& out, std::ostream& err) {
    for (const auto& v : verdicts) {
        std::ostream& s = v.pass ? out : err;
        s << (v.pass ? "PASS " : "FAIL ") << v.check << ": lhs=" << v.lhs << " rhs=" << v.rhs
          << " tol=" << v.tolerance;
        if (!v.detail.empty()) s << " (" << v.detail << ")";
        s << "\n";
    }
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"interior-blowup", "boundary-blowup",
                                                "steady-demo", "custom"};
    return names;
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.preset = name;
    ProblemSpec& s = cfg.spec;
    s.time_horizon = 20.0;
    if (name == "interior-blowup") {
        s.a = -2.0;
        s.b = 2.0;
        s.f = Nonlinearity::linear();
        s.initial = InitialData::steady_plus_sine(0.2);
        cfg.graph_times = {0.0, 0.01, 0.02, 0.05, 0.2, 20.0};
    } else if (name == "boundary-blowup") {
        s.a = 0.0;
        s.b = 3.0;
        s.f = Nonlinearity::constant(1.0);
        s.initial = InitialData::steady_plus_sine(1.0);
        cfg.graph_times = {0.0, 0.05, 0.1, 0.2, 1.0, 20.0};
    } else if (name == "steady-demo") {
        s.a = -1.5;
        s.b = 1.5;
        s.f = Nonlinearity::linear();
        s.initial = InitialData::steady_plus_sine(0.0);
        cfg.graph_times = {0.0, 20.0};
        cfg.equivalence_window = 0.01;
    } else if (name == "custom") {
        s.time_horizon = ProblemSpec{}.time_horizon;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return cfg;
}

std::vector<std::string> preset_warnings(const RunConfig& cfg) {
    std::vector<std::string> w;
    const ProblemSpec& s = cfg.spec;
    if (cfg.preset != "steady-demo" && s.symmetric_scenario() && s.b <= kCubeRootSix)
        w.push_back("b <= cbrt(6): the steady state is increasing, no interior blow-up expected");
    if (cfg.preset == "interior-blowup" && !s.symmetric_scenario())
        w.push_back("interior-blowup expects a = -b and f(u) = u");
    if (s.a == 0.0 && s.f.is_constant(1.0) && s.b <= 2.0)
        w.push_back("b <= 2 with f = 1 on [0,b]: no boundary blow-up expected");
    if (cfg.preset == "boundary-blowup" && !(s.a == 0.0 && s.f.is_constant(1.0)))
        w.push_back("boundary-blowup expects a = 0 and f = 1");
    return w;
}

RunConfig resolve_config(const CliOptions& opts) {
    RunConfig cfg;
    if (opts.config) {
        const std::string text = read_text(*opts.config);
        const std::string name = opts.preset ? *opts.preset : parse_config(text).preset;
        cfg = parse_config(text, preset_config(name));
        cfg.preset = name;
    } else {
        cfg = preset_config(opts.preset.value_or("custom"));
    }
    if (opts.cells) cfg.spec.grid_cells = *opts.cells;
    if (opts.t_end) cfg.spec.time_horizon = *opts.t_end;
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

int cmd_simulate(const CliOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = resolve_config(opts);
        check_config(cfg);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    }
    for (const auto& w : preset_warnings(cfg)) err << "warning: " << w << "\n";

    const ProblemSpec& spec = cfg.spec;
    const std::vector<double> outputs = run_outputs(cfg);
    try {
        fs::create_directories(opts.out);
        write_text(opts.out / "config.json", dump_config(cfg));

        const EpsContinuation cont = run_eps_continuation(spec, spec.time_horizon, outputs);
        json cj{{"eps_schedule", spec.eps_schedule},
                {"cauchy_gaps", cont.cauchy_gaps},
                {"eps_cauchy_tol", spec.tolerances.eps_cauchy_tol}};
        write_text(opts.out / "continuation.json", cj.dump(2) + "\n");
        for (std::size_t k = 0; k < cont.cauchy_gaps.size(); ++k)
            out << "cauchy gap eps " << spec.eps_schedule[k] << " -> " << spec.eps_schedule[k + 1]
                << ": " << cont.cauchy_gaps[k] << "\n";

        Trajectory limit;
        try {
            limit = accept_limit(cont, spec);
        } catch (const NotCauchy& e) {
            err << e.what() << "\n";
            return exit_code::not_cauchy;
        }
        write_text(opts.out / "snapshots.json", snapshots_to_json(limit.snapshots));
        write_text(opts.out / "diagnostics.csv", diagnostics_to_csv(limit.diagnostics));

        if (const auto rep = detect_blowup(limit)) {
            write_text(opts.out / "blowup.json", blowup_to_json(*rep));
            out << "blow-up: t0=" << rep->t0 << " at u=" << rep->zero_location
                << " (x=" << rep->x_location << ")\n";
        } else {
            out << "no blow-up detected up to t=" << spec.time_horizon << "\n";
        }

        for (double t : cfg.graph_times) {
            if (const Profile* p = limit.snapshot_at(t))
                write_text(opts.out / ("graph_t" + format_time(t) + ".csv"),
                           graph_to_csv(to_graph(*p)));
            else
                err << "warning: no snapshot at graph time " << t << "\n";
        }

        if (cfg.solve_u) {
            const Profile x0 = build_initial_data(spec);
            const Profile u0 = x_to_u(x0, Grid(-1.0, 1.0, spec.grid_cells));
            const USolution us = solve_u(u0, spec.f, spec.time_horizon, cfg.gradient_cap, outputs,
                                         spec.tolerances.newton_or_step_tol);
            write_text(opts.out / "u_snapshots.json", snapshots_to_json(us.snapshots));
            json uj{{"gradient_cap", cfg.gradient_cap},
                    {"halt_time", us.halt_time ? json(*us.halt_time) : json(nullptr)},
                    {"steps", us.step_times.size()}};
            write_text(opts.out / "u_run.json", uj.dump(2) + "\n");
            if (us.halt_time) out << "u-solver halted at t=" << *us.halt_time << "\n";
        }
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << "\n";
        return exit_code::solver_failure;
    } catch (const fs::filesystem_error& e) {
        err << "solver failure: " << e.what() << "\n";
        return exit_code::solver_failure;
    }
    out << "wrote " << opts.out.string() << "\n";
    return exit_code::ok;
}

std::vector<Verdict> verify_run(const RunConfig& cfg, const Trajectory& traj,
                                const std::vector<double>& cauchy_gaps,
                                const std::optional<BlowupReport>& blowup) {
    const ProblemSpec& spec = traj.spec;
    const Grid g = spec.grid();
    const double h2 = g.h() * g.h();
    const ToleranceSet& tol = spec.tolerances;
    std::vector<Verdict> v;

    const ValidationReport init = validate_initial_data(traj.snapshots.front(), spec);
    std::size_t init_fail = 0;
    for (const auto& c : init.checks)
        if (!c.pass && !c.informational) ++init_fail;
    v.push_back(failing_count("initial_data", init_fail, init.checks.size()));

    double edge = 0.0;
    for (const auto& s : traj.snapshots)
        edge = std::max({edge, std::abs(s.front() + 1.0), std::abs(s.back() - 1.0)});
    v.push_back(make_verdict("boundary_values", edge, 0.0, 0.0));

    v.push_back(verify_energy_descent(traj, 1e-8));
    v.push_back(verify_dissipation_balance(traj, 10.0 * h2));
    if (!traj.diagnostics.empty()) {
        const double first = traj.diagnostics.front().xt_maxnorm;
        v.push_back(verify_xt_monotone(traj, tol.monotonicity_slack * first + kRoundoff));
        const double bound = init.curvature_quotient_sup;
        v.push_back(verify_xt_bound(traj, bound, 10.0 * h2 * std::max(1.0, bound)));
    }

    if (!cauchy_gaps.empty()) {
        v.push_back(make_verdict("eps_cauchy", cauchy_gaps.back(), tol.eps_cauchy_tol, 0.0));
        v.back().pass = cauchy_gaps.back() < tol.eps_cauchy_tol;
        // gaps at roundoff level (stationary data) count as settled
        double worst = -std::numeric_limits<double>::infinity();
        bool decreasing = true;
        for (std::size_t k = 1; k < cauchy_gaps.size(); ++k) {
            worst = std::max(worst, cauchy_gaps[k] - cauchy_gaps[k - 1]);
            if (!(cauchy_gaps[k] < cauchy_gaps[k - 1]) && cauchy_gaps[k] > kRoundoff) decreasing = false;
        }
        if (cauchy_gaps.size() > 1) {
            Verdict d = make_verdict("eps_gaps_decreasing", worst, 0.0, kRoundoff);
            d.pass = decreasing;
            v.push_back(d);
        }
    }

    const SteadyState steady = compute_steady_state(spec.a, spec.b, spec.f, g);
    const ConvergenceResult conv = verify_convergence(traj, steady, tol.steady_state_tol);
    {
        Verdict c = make_verdict("steady_convergence", conv.gaps.back(), tol.steady_state_tol, 0.0);
        c.pass = conv.pass;
        c.detail = "C1 gap at t=" + format_time(traj.final_snapshot().time);
        v.push_back(c);
    }
    {
        const double thr = tail_threshold(spec.a, spec.b, tol.steady_state_tol);
        const auto stop = tail_stopping_time(traj, thr);
        Verdict c;
        if (stop) {
            const Profile* p = traj.snapshot_at(*stop);
            const double gap = c1_distance(*p, steady.profile);
            c = make_verdict("tail_horizon_convergence", gap, tol.steady_state_tol, 0.0);
            c.pass = gap < tol.steady_state_tol;
            c.detail = "tail below " + format_time(thr) + " at t=" + format_time(*stop);
        } else {
            c = make_verdict("tail_horizon_convergence", conv.gaps.back(), tol.steady_state_tol, 0.0);
            c.pass = false;
            c.detail = "dissipation tail never fell below " + format_time(thr);
        }
        v.push_back(c);
    }

    {
        const double e_inf = energy(steady.profile, spec.f);
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& s : traj.snapshots) worst = std::max(worst, e_inf - energy(s, spec.f));
        v.push_back(make_verdict("steady_minimizer", worst, 0.0, 10.0 * h2));
    }

    {
        double worst_p = 0.0, worst_c = 0.0;
        for (const auto& s : traj.snapshots) {
            const PoincareResult p = check_poincare(s);
            worst_p = std::max(worst_p, p.lhs / p.rhs);
            const CoercivityResult c = check_coercivity(s, spec.f);
            worst_c = std::max({worst_c, c.I / c.bounds.I_bound, c.sup_norm / c.bounds.sup_bound});
        }
        v.push_back(make_verdict("poincare_snapshots", worst_p, 1.0, 1e-12));
        v.push_back(make_verdict("coercivity_snapshots", worst_c, 1.0, 1e-12));
    }
    {
        std::mt19937_64 rng(cfg.seed);
        std::size_t bad_p = 0, bad_c = 0;
        const auto n = static_cast<std::size_t>(cfg.property_samples);
        for (std::size_t k = 0; k < n; ++k) {
            const Profile p = random_admissible_profile(g, rng);
            if (!check_poincare(p).pass) ++bad_p;
            if (!check_coercivity(p, spec.f).pass) ++bad_c;
        }
        v.push_back(failing_count("poincare_sampled", bad_p, n));
        v.push_back(failing_count("coercivity_sampled", bad_c, n));
    }

    if (spec.symmetric_scenario()) {
        v.push_back(verify_odd_symmetry(traj, 1e-8));
        v.push_back(verify_nodal_decrease(traj, 1e-8));
        const double xu0 = traj.diagnostics.empty() ? 1.0
                                                    : std::abs(traj.diagnostics.front().xu_at_zero.value_or(1.0));
        v.push_back(verify_xu_at_zero_monotone(traj, tol.monotonicity_slack * std::max(1.0, xu0)));
        if (blowup) v.push_back(verify_no_reinversion(traj, blowup->bracket.second));
    }
    if (blowup) v.push_back(verify_negative_excursion(traj));
    return v;
}

int cmd_verify(const fs::path& run_dir, std::optional<std::uint64_t> seed, std::ostream& out,
               std::ostream& err) {
    RunConfig cfg;
    Trajectory traj;
    std::vector<double> gaps;
    std::optional<BlowupReport> blowup;
    try {
        cfg = load_config(run_dir / "config.json");
        if (seed) cfg.seed = *seed;
        traj.spec = cfg.spec;
        traj.snapshots = snapshots_from_json(read_text(run_dir / "snapshots.json"));
        traj.diagnostics = diagnostics_from_csv(read_text(run_dir / "diagnostics.csv"));
        traj.step_eps = cfg.spec.eps_schedule.back();
        if (traj.snapshots.empty()) throw InvalidArgument("snapshots.json is empty");
        for (const auto& s : traj.snapshots)
            if (!(s.grid == cfg.spec.grid())) throw InvalidArgument("snapshot grid does not match config");
        if (fs::exists(run_dir / "continuation.json")) {
            const json cj = json::parse(read_text(run_dir / "continuation.json"));
            gaps = cj.at("cauchy_gaps").get<std::vector<double>>();
        }
        if (fs::exists(run_dir / "blowup.json"))
            blowup = blowup_from_json(read_text(run_dir / "blowup.json"));
    } catch (const std::exception& e) {
        err << "cannot load run directory " << run_dir.string() << ": " << e.what() << "\n";
        return exit_code::config_error;
    }

    std::vector<Verdict> verdicts;
    try {
        verdicts = verify_run(cfg, traj, gaps, blowup);
    } catch (const Error& e) {
        err << "verification failed to run: " << e.what() << "\n";
        return exit_code::solver_failure;
    }
    write_text(run_dir / "verdicts.json", verdicts_to_json(verdicts));
    report(verdicts, out, err);
    const bool all = std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
    return all ? exit_code::ok : exit_code::check_failed;
}

EquivalenceResult run_equivalence(const RunConfig& cfg) {
    const ProblemSpec& spec = cfg.spec;
    const double eps = spec.eps_schedule.back();
    EquivalenceResult res;

    if (cfg.equivalence_window) {
        res.window = *cfg.equivalence_window;
    } else {
        const Trajectory probe =
            solve_x_eps(spec, eps, spec.time_horizon, default_output_times(spec.time_horizon));
        const auto rep = detect_blowup(probe);
        if (!rep)
            throw NoBlowup("no degeneracy time up to t=" + format_time(spec.time_horizon) +
                           "; set equivalence.window");
        res.t0 = rep->t0;
        res.window = cfg.equivalence_fraction * rep->t0;
    }
    if (!(res.window > 0.0)) throw InvalidArgument("equivalence window must be positive");

    for (int k = 1; k <= cfg.equivalence_outputs; ++k)
        res.times.push_back(res.window * k / cfg.equivalence_outputs);
    const Trajectory xs = solve_x_eps(spec, eps, res.window, res.times);
    const Profile u0 = x_to_u(xs.snapshots.front(), Grid(-1.0, 1.0, spec.grid_cells));
    const USolution us = solve_u(u0, spec.f, res.window, cfg.gradient_cap, res.times,
                                 spec.tolerances.newton_or_step_tol);
    if (us.halt_time)
        throw SolveFailure("u-solver hit the gradient cap at t=" + format_time(*us.halt_time) +
                           " inside the equivalence window");

    const Grid g = spec.grid();
    for (double t : res.times) {
        const Profile* xp = xs.snapshot_at(t);
        const auto up = std::find_if(us.snapshots.begin(), us.snapshots.end(),
                                     [t](const Profile& p) { return p.time == t; });
        if (xp == nullptr || up == us.snapshots.end())
            throw SolveFailure("missing snapshot at t=" + format_time(t));
        const Profile back = u_to_x(*up, g);
        res.gaps.push_back(max_abs_diff(back.values, xp->values));
    }
    res.max_gap = *std::max_element(res.gaps.begin(), res.gaps.end());
    res.pass = res.max_gap < cfg.equivalence_tolerance;
    return res;
}

int cmd_equivalence(const CliOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = resolve_config(opts);
        check_config(cfg);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    }
    for (const auto& w : preset_warnings(cfg)) err << "warning: " << w << "\n";

    EquivalenceResult res;
    try {
        res = run_equivalence(cfg);
    } catch (const NoBlowup& e) {
        err << e.what() << "\n";
        return exit_code::no_blowup;
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << "\n";
        return exit_code::solver_failure;
    }

    json j{{"cells", cfg.spec.grid_cells},
           {"t0", res.t0 ? json(*res.t0) : json(nullptr)},
           {"window", res.window},
           {"times", res.times},
           {"gaps", res.gaps},
           {"max_gap", res.max_gap},
           {"tolerance", cfg.equivalence_tolerance},
           {"pass", res.pass}};
    try {
        fs::create_directories(opts.out);
        write_text(opts.out / "equivalence.json", j.dump(2) + "\n");
    } catch (const std::exception& e) {
        err << "cannot write output: " << e.what() << "\n";
        return exit_code::solver_failure;
    }
    if (res.t0) out << "t0=" << *res.t0 << " ";
    out << "window=" << res.window << " max gap=" << res.max_gap
        << (res.pass ? " < " : " >= ") << cfg.equivalence_tolerance << "\n";
    return res.pass ? exit_code::ok : exit_code::check_failed;
}

int cmd_steady(const CliOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = resolve_config(opts);
        cfg.spec.validate();
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    }
    const ProblemSpec& s = cfg.spec;
    const SteadyState st = compute_steady_state(s.a, s.b, s.f, s.grid());
    std::string text = "# provenance=" + to_string(st.provenance);
    if (st.slope_at_zero) text += ", slope_at_zero=" + format_time(*st.slope_at_zero);
    text += "\n" + profile_to_csv(st.profile);
    out << text;
    if (opts.out != CliOptions{}.out) {
        try {
            fs::create_directories(opts.out);
            write_text(opts.out / "steady.csv", text);
        } catch (const std::exception& e) {
            err << "cannot write output: " << e.what() << "\n";
            return exit_code::solver_failure;
        }
    }
    return exit_code::ok;
}

} // namespace gbc
