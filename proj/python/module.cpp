#include "gbc/analysis.hpp"
#include "gbc/cli.hpp"
#include "gbc/energy.hpp"
#include "gbc/errors.hpp"
#include "gbc/io.hpp"
#include "gbc/solver.hpp"
#include "gbc/steady.hpp"
#include "gbc/transform.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gbc;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> as_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

} // namespace

PYBIND11_MODULE(_gbc, m) {
    m.doc() = "Hodograph-form degenerate parabolic solver";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    py::register_exception<MonotonicityViolation>(m, "MonotonicityViolation", error.ptr());
    py::register_exception<SpecialConditionViolation>(m, "SpecialConditionViolation", error.ptr());
    py::register_exception<NotMonotone>(m, "NotMonotone", error.ptr());
    py::register_exception<OutOfRange>(m, "OutOfRange", error.ptr());
    py::register_exception<NotAdmissible>(m, "NotAdmissible", error.ptr());
    py::register_exception<SolveFailure>(m, "SolveFailure", error.ptr());
    py::register_exception<StepSizeUnderflow>(m, "StepSizeUnderflow", error.ptr());
    py::register_exception<NotCauchy>(m, "NotCauchy", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<NoBlowup>(m, "NoBlowup", error.ptr());

    py::class_<Grid>(m, "Grid")
        .def(py::init<double, double, int>(), py::arg("a"), py::arg("b"), py::arg("cells"))
        .def_property_readonly("a", &Grid::a)
        .def_property_readonly("b", &Grid::b)
        .def_property_readonly("cells", &Grid::cells)
        .def_property_readonly("h", &Grid::h)
        .def_property_readonly("nodes", [](const Grid& g) {
            return as_array({g.nodes().begin(), g.nodes().end()});
        })
        .def("__eq__", &Grid::operator==)
        .def("__repr__", [](const Grid& g) {
            return "Grid(" + format_time(g.a()) + ", " + format_time(g.b()) + ", " + std::to_string(g.cells()) + ")";
        });

    py::class_<Profile>(m, "Profile")
        .def(py::init([](const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& v,
                         double t) { return Profile(g, as_vector(v), t); }),
             py::arg("grid"), py::arg("values"), py::arg("time") = 0.0)
        .def_readonly("grid", &Profile::grid)
        .def_readwrite("time", &Profile::time)
        .def_property_readonly("values", [](const Profile& p) { return as_array(p.values); })
        .def("__len__", &Profile::size);

    py::class_<Nonlinearity>(m, "Nonlinearity")
        .def_static("zero", &Nonlinearity::zero)
        .def_static("constant", &Nonlinearity::constant, py::arg("c"))
        .def_static("linear", &Nonlinearity::linear)
        .def_static("polynomial", &Nonlinearity::polynomial, py::arg("coefficients"))
        .def_property_readonly("kind", [](const Nonlinearity& f) { return to_string(f.kind); })
        .def_readonly("coefficients", &Nonlinearity::coefficients)
        .def("__call__", &Nonlinearity::operator(), py::arg("u"));

    py::enum_<SineMode>(m, "SineMode").value("Half", SineMode::Half).value("Odd", SineMode::Odd);

    py::class_<InitialData>(m, "InitialData")
        .def_static("steady_plus_sine", &InitialData::steady_plus_sine, py::arg("mu"),
                    py::arg("mode") = std::nullopt)
        .def_static("explicit_values", &InitialData::explicit_values, py::arg("values"))
        .def_readonly("mu", &InitialData::mu)
        .def_readonly("mode", &InitialData::mode);

    py::class_<ToleranceSet>(m, "ToleranceSet")
        .def(py::init<>())
        .def_readwrite("newton_or_step_tol", &ToleranceSet::newton_or_step_tol)
        .def_readwrite("eps_cauchy_tol", &ToleranceSet::eps_cauchy_tol)
        .def_readwrite("monotonicity_slack", &ToleranceSet::monotonicity_slack)
        .def_readwrite("steady_state_tol", &ToleranceSet::steady_state_tol)
        .def_readwrite("blowup_bracket_width", &ToleranceSet::blowup_bracket_width);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def(py::init<>())
        .def_readwrite("a", &ProblemSpec::a)
        .def_readwrite("b", &ProblemSpec::b)
        .def_readwrite("f", &ProblemSpec::f)
        .def_readwrite("initial", &ProblemSpec::initial)
        .def_readwrite("eps_schedule", &ProblemSpec::eps_schedule)
        .def_readwrite("grid_cells", &ProblemSpec::grid_cells)
        .def_readwrite("time_horizon", &ProblemSpec::time_horizon)
        .def_readwrite("tolerances", &ProblemSpec::tolerances)
        .def_readwrite("symmetric_conditions", &ProblemSpec::symmetric_conditions)
        .def("validate", &ProblemSpec::validate)
        .def("grid", &ProblemSpec::grid)
        .def_property_readonly("sine_mode", &ProblemSpec::sine_mode);

    py::class_<ConditionCheck>(m, "ConditionCheck")
        .def_readonly("name", &ConditionCheck::name)
        .def_readonly("passed", &ConditionCheck::pass)
        .def_readonly("informational", &ConditionCheck::informational)
        .def_readonly("worst_value", &ConditionCheck::worst_value)
        .def_readonly("worst_location", &ConditionCheck::worst_location);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("checks", &ValidationReport::checks)
        .def_readonly("curvature_quotient_sup", &ValidationReport::curvature_quotient_sup)
        .def("all_pass", &ValidationReport::all_pass);

    m.def("build_initial_data", &build_initial_data, py::arg("spec"));
    m.def("validate_initial_data", &validate_initial_data, py::arg("profile"), py::arg("spec"));

    py::class_<SteadyState>(m, "SteadyState")
        .def_readonly("profile", &SteadyState::profile)
        .def_property_readonly("provenance", [](const SteadyState& s) { return to_string(s.provenance); })
        .def_readonly("slope_at_zero", &SteadyState::slope_at_zero);

    m.def("compute_steady_state", &compute_steady_state, py::arg("a"), py::arg("b"), py::arg("f"), py::arg("grid"));
    m.def("energy", &energy, py::arg("profile"), py::arg("f"));

    py::class_<PoincareResult>(m, "PoincareResult")
        .def_readonly("lhs", &PoincareResult::lhs)
        .def_readonly("rhs", &PoincareResult::rhs)
        .def_readonly("passed", &PoincareResult::pass);
    py::class_<EnergyBounds>(m, "EnergyBounds")
        .def_readonly("M", &EnergyBounds::M)
        .def_readonly("c1", &EnergyBounds::c1)
        .def_readonly("I_bound", &EnergyBounds::I_bound)
        .def_readonly("sup_bound", &EnergyBounds::sup_bound);
    py::class_<CoercivityResult>(m, "CoercivityResult")
        .def_readonly("I", &CoercivityResult::I)
        .def_readonly("sup_norm", &CoercivityResult::sup_norm)
        .def_readonly("bounds", &CoercivityResult::bounds)
        .def_readonly("passed", &CoercivityResult::pass);
    m.def("check_poincare", &check_poincare, py::arg("profile"));
    m.def("check_coercivity", &check_coercivity, py::arg("profile"), py::arg("f"));

    py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
        .def_readonly("t", &DiagnosticsRecord::t)
        .def_readonly("energy", &DiagnosticsRecord::energy)
        .def_readonly("xt_maxnorm", &DiagnosticsRecord::xt_maxnorm)
        .def_readonly("min_xu", &DiagnosticsRecord::min_xu)
        .def_readonly("argmin_xu", &DiagnosticsRecord::argmin_xu)
        .def_readonly("xu_at_zero", &DiagnosticsRecord::xu_at_zero)
        .def_readonly("dissipation_increment", &DiagnosticsRecord::dissipation_increment);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("snapshots", &Trajectory::snapshots)
        .def_readonly("diagnostics", &Trajectory::diagnostics)
        .def_readonly("spec", &Trajectory::spec)
        .def_readonly("eps", &Trajectory::eps)
        .def_readonly("step_eps", &Trajectory::step_eps)
        .def_property_readonly("times", [](const Trajectory& t) {
            std::vector<double> v;
            for (const auto& s : t.snapshots) v.push_back(s.time);
            return as_array(v);
        });

    py::class_<EpsContinuation>(m, "EpsContinuation")
        .def_readonly("runs", &EpsContinuation::runs)
        .def_readonly("cauchy_gaps", &EpsContinuation::cauchy_gaps);

    py::class_<BlowupReport>(m, "BlowupReport")
        .def_readonly("t0", &BlowupReport::t0)
        .def_readonly("bracket", &BlowupReport::bracket)
        .def_readonly("zero_location", &BlowupReport::zero_location)
        .def_readonly("x_location", &BlowupReport::x_location)
        .def_readonly("pre_t0_min_xu", &BlowupReport::pre_t0_min_xu);

    py::class_<USolution>(m, "USolution")
        .def_readonly("snapshots", &USolution::snapshots)
        .def_readonly("step_times", &USolution::step_times)
        .def_readonly("max_gradient", &USolution::max_gradient)
        .def_readonly("halt_time", &USolution::halt_time);

    // The solvers release the GIL; they touch no Python state.
    m.def("step_x_eps", &step_x_eps, py::arg("current"), py::arg("f"), py::arg("eps"), py::arg("dt"));
    m.def(
        "solve_x_eps",
        [](const ProblemSpec& spec, double eps, double t_end, std::vector<double> outputs) {
            py::gil_scoped_release release;
            return solve_x_eps(spec, eps, t_end, outputs);
        },
        py::arg("spec"), py::arg("eps"), py::arg("t_end"), py::arg("output_times"));
    m.def(
        "run_eps_continuation",
        [](const ProblemSpec& spec, double t_end, std::vector<double> outputs) {
            py::gil_scoped_release release;
            return run_eps_continuation(spec, t_end, outputs);
        },
        py::arg("spec"), py::arg("t_end"), py::arg("output_times"));
    m.def(
        "solve_x_limit",
        [](const ProblemSpec& spec, double t_end, std::vector<double> outputs) {
            py::gil_scoped_release release;
            return solve_x_limit(spec, t_end, outputs);
        },
        py::arg("spec"), py::arg("t_end"), py::arg("output_times"));
    m.def("detect_blowup", &detect_blowup, py::arg("trajectory"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "solve_u",
        [](const Profile& u0, const Nonlinearity& f, double t_end, double cap, std::vector<double> outputs,
           double step_tol) {
            py::gil_scoped_release release;
            return solve_u(u0, f, t_end, cap, outputs, step_tol);
        },
        py::arg("u0"), py::arg("f"), py::arg("t_end"), py::arg("gradient_cap") = 50.0, py::arg("output_times"),
        py::arg("step_tol") = 1e-7);
    m.def("c1_distance", &c1_distance, py::arg("p"), py::arg("q"));

    py::class_<GraphCurve>(m, "GraphCurve")
        .def_readonly("points", &GraphCurve::points)
        .def_readonly("time", &GraphCurve::time)
        .def_readonly("monotone_in_x", &GraphCurve::monotone_in_x);
    m.def("x_to_u", &x_to_u, py::arg("x_profile"), py::arg("target_grid"));
    m.def("u_to_x", &u_to_x, py::arg("u_profile"), py::arg("target_grid"));
    m.def("to_graph", &to_graph, py::arg("x_profile"));

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("spec", &RunConfig::spec)
        .def_readwrite("preset", &RunConfig::preset)
        .def_readwrite("output_times", &RunConfig::output_times)
        .def_readwrite("graph_times", &RunConfig::graph_times)
        .def_readwrite("gradient_cap", &RunConfig::gradient_cap)
        .def_readwrite("equivalence_fraction", &RunConfig::equivalence_fraction)
        .def_readwrite("equivalence_window", &RunConfig::equivalence_window)
        .def_readwrite("equivalence_tolerance", &RunConfig::equivalence_tolerance)
        .def_readwrite("seed", &RunConfig::seed);
    m.def("preset_names", &preset_names);
    m.def("preset_config", &preset_config, py::arg("name"));
    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("dump_config", &dump_config, py::arg("config"));
    m.def("default_output_times", &default_output_times, py::arg("t_end"));

    py::class_<EquivalenceResult>(m, "EquivalenceResult")
        .def_readonly("t0", &EquivalenceResult::t0)
        .def_readonly("window", &EquivalenceResult::window)
        .def_readonly("times", &EquivalenceResult::times)
        .def_readonly("gaps", &EquivalenceResult::gaps)
        .def_readonly("max_gap", &EquivalenceResult::max_gap)
        .def_readonly("passed", &EquivalenceResult::pass);
    m.def("run_equivalence", &run_equivalence, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
