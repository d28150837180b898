#include "gbc/io.hpp"

#include "gbc/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace gbc {

using nlohmann::json;

namespace {

void flatten(const json& node, const std::string& prefix, std::map<std::string, json>& out) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object())
            flatten(*it, key, out);
        else
            out[key] = *it;
    }
}

double as_number(const std::string& key, const json& v) {
    if (!v.is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return v.get<double>();
}

int as_int(const std::string& key, const json& v) {
    if (!v.is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
    return v.get<int>();
}

bool as_bool(const std::string& key, const json& v) {
    if (!v.is_boolean()) throw ConfigError("config: '" + key + "' must be true or false");
    return v.get<bool>();
}

std::string as_string(const std::string& key, const json& v) {
    if (!v.is_string()) throw ConfigError("config: '" + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> as_numbers(const std::string& key, const json& v) {
    if (!v.is_array()) throw ConfigError("config: '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(as_number(key, e));
    return out;
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const char* what) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw InvalidArgument(std::string(what) + ": bad number '" + field + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

json profile_json(const Profile& p) {
    return json{{"time", p.time},
                {"a", p.grid.a()},
                {"b", p.grid.b()},
                {"n", p.grid.cells()},
                {"values", p.values}};
}

Profile profile_of(const json& j) {
    try {
        Grid g(j.at("a").get<double>(), j.at("b").get<double>(), j.at("n").get<int>());
        return Profile(g, j.at("values").get<std::vector<double>>(), j.at("time").get<double>());
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("profile json: ") + e.what());
    }
}

} // namespace

RunConfig parse_config(const std::string& text, RunConfig cfg) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    std::map<std::string, json> kv;
    flatten(root, "", kv);

    ProblemSpec& s = cfg.spec;
    std::optional<std::string> f_kind;
    std::optional<std::vector<double>> f_coeffs;
    for (const auto& [key, v] : kv) {
        if (key == "a") s.a = as_number(key, v);
        else if (key == "b") s.b = as_number(key, v);
        else if (key == "f.kind") f_kind = as_string(key, v);
        else if (key == "f.coefficients") f_coeffs = as_numbers(key, v);
        else if (key == "initial.kind") {
            const std::string k = as_string(key, v);
            if (k == "steady_plus_sine") s.initial.kind = InitialData::Kind::SteadyPlusSine;
            else if (k == "explicit") s.initial.kind = InitialData::Kind::Explicit;
            else throw ConfigError("config: unknown initial.kind '" + k + "'");
        }
        else if (key == "initial.mu") s.initial.mu = as_number(key, v);
        else if (key == "initial.mode") {
            const std::string m = as_string(key, v);
            if (m == "half") s.initial.mode = SineMode::Half;
            else if (m == "odd") s.initial.mode = SineMode::Odd;
            else if (m == "auto") s.initial.mode.reset();
            else throw ConfigError("config: unknown initial.mode '" + m + "'");
        }
        else if (key == "initial.values") s.initial.values = as_numbers(key, v);
        else if (key == "grid_cells") s.grid_cells = as_int(key, v);
        else if (key == "eps_schedule") s.eps_schedule = as_numbers(key, v);
        else if (key == "time_horizon") s.time_horizon = as_number(key, v);
        else if (key == "symmetric_conditions") s.symmetric_conditions = as_bool(key, v);
        else if (key == "tolerances.newton_or_step_tol") s.tolerances.newton_or_step_tol = as_number(key, v);
        else if (key == "tolerances.eps_cauchy_tol") s.tolerances.eps_cauchy_tol = as_number(key, v);
        else if (key == "tolerances.monotonicity_slack") s.tolerances.monotonicity_slack = as_number(key, v);
        else if (key == "tolerances.steady_state_tol") s.tolerances.steady_state_tol = as_number(key, v);
        else if (key == "tolerances.blowup_bracket_width") s.tolerances.blowup_bracket_width = as_number(key, v);
        else if (key == "preset") cfg.preset = as_string(key, v);
        else if (key == "output_times") cfg.output_times = as_numbers(key, v);
        else if (key == "graph_times") cfg.graph_times = as_numbers(key, v);
        else if (key == "solve_u") cfg.solve_u = as_bool(key, v);
        else if (key == "gradient_cap") cfg.gradient_cap = as_number(key, v);
        else if (key == "equivalence.fraction") cfg.equivalence_fraction = as_number(key, v);
        else if (key == "equivalence.window") cfg.equivalence_window = as_number(key, v);
        else if (key == "equivalence.tolerance") cfg.equivalence_tolerance = as_number(key, v);
        else if (key == "equivalence.outputs") cfg.equivalence_outputs = as_int(key, v);
        else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config: 'seed' must be a nonnegative integer");
            cfg.seed = v.get<std::uint64_t>();
        }
        else if (key == "verify.samples") cfg.property_samples = as_int(key, v);
        else throw ConfigError("config: unknown key '" + key + "'");
    }

    if (f_kind || f_coeffs) {
        Nonlinearity::Kind kind = s.f.kind;
        if (f_kind) {
            try {
                kind = parse_nonlinearity_kind(*f_kind);
            } catch (const Error& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        }
        std::vector<double> c = f_coeffs.value_or(kind == s.f.kind ? s.f.coefficients
                                                                   : std::vector<double>{});
        switch (kind) {
        case Nonlinearity::Kind::Zero: s.f = Nonlinearity::zero(); break;
        case Nonlinearity::Kind::Linear: s.f = Nonlinearity::linear(); break;
        case Nonlinearity::Kind::Constant:
            if (c.size() != 1) throw ConfigError("config: constant f needs exactly one coefficient");
            s.f = Nonlinearity::constant(c[0]);
            break;
        case Nonlinearity::Kind::Polynomial:
            if (c.empty()) throw ConfigError("config: polynomial f needs coefficients");
            s.f = Nonlinearity::polynomial(c);
            break;
        }
    }
    if (cfg.equivalence_outputs < 1) throw ConfigError("config: equivalence.outputs must be >= 1");
    if (cfg.property_samples < 0) throw ConfigError("config: verify.samples must be >= 0");
    if (!(cfg.gradient_cap > 0.0)) throw ConfigError("config: gradient_cap must be positive");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::string text;
    try {
        text = read_text(path);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text, std::move(base));
}

std::string dump_config(const RunConfig& cfg) {
    const ProblemSpec& s = cfg.spec;
    json j = json::object();
    j["preset"] = cfg.preset;
    j["a"] = s.a;
    j["b"] = s.b;
    j["f.kind"] = to_string(s.f.kind);
    if (!s.f.coefficients.empty()) j["f.coefficients"] = s.f.coefficients;
    if (s.initial.kind == InitialData::Kind::SteadyPlusSine) {
        j["initial.kind"] = "steady_plus_sine";
        j["initial.mu"] = s.initial.mu;
        j["initial.mode"] = !s.initial.mode ? "auto"
                            : *s.initial.mode == SineMode::Odd ? "odd"
                                                               : "half";
    } else {
        j["initial.kind"] = "explicit";
        j["initial.values"] = s.initial.values;
    }
    j["grid_cells"] = s.grid_cells;
    j["eps_schedule"] = s.eps_schedule;
    j["time_horizon"] = s.time_horizon;
    if (s.symmetric_conditions) j["symmetric_conditions"] = *s.symmetric_conditions;
    j["tolerances.newton_or_step_tol"] = s.tolerances.newton_or_step_tol;
    j["tolerances.eps_cauchy_tol"] = s.tolerances.eps_cauchy_tol;
    j["tolerances.monotonicity_slack"] = s.tolerances.monotonicity_slack;
    j["tolerances.steady_state_tol"] = s.tolerances.steady_state_tol;
    j["tolerances.blowup_bracket_width"] = s.tolerances.blowup_bracket_width;
    if (!cfg.output_times.empty()) j["output_times"] = cfg.output_times;
    j["graph_times"] = cfg.graph_times;
    j["solve_u"] = cfg.solve_u;
    j["gradient_cap"] = cfg.gradient_cap;
    j["equivalence.fraction"] = cfg.equivalence_fraction;
    if (cfg.equivalence_window) j["equivalence.window"] = *cfg.equivalence_window;
    j["equivalence.tolerance"] = cfg.equivalence_tolerance;
    j["equivalence.outputs"] = cfg.equivalence_outputs;
    j["seed"] = cfg.seed;
    j["verify.samples"] = cfg.property_samples;
    return j.dump(2) + "\n";
}

std::vector<double> default_output_times(double t_end) {
    // fine spacing early, where blow-up happens, then uniform
    std::vector<double> out;
    const double early = t_end / 100.0;
    for (int k = 1; k <= 50; ++k) out.push_back(early * k / 50.0);
    for (int k = 2; k <= 100; ++k) out.push_back(t_end * k / 100.0);
    return out;
}

std::string profile_to_csv(const Profile& p) {
    std::string out = "u,value\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        out += shortest(p.grid.node(static_cast<int>(i))) + "," + shortest(p[i]) + "\n";
    return out;
}

Profile profile_from_csv(const std::string& text, double a, double b, double time) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "u,value")
        throw InvalidArgument("profile csv: expected header 'u,value'");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2) throw InvalidArgument("profile csv: expected two fields");
        values.push_back(parse_double(fields[1], "profile csv"));
    }
    if (values.size() < 2) throw InvalidArgument("profile csv: too few rows");
    const Grid grid(a, b, static_cast<int>(values.size()) - 1);
    return Profile(grid, std::move(values), time);
}

std::string profile_to_json(const Profile& p) { return profile_json(p).dump() + "\n"; }

Profile profile_from_json(const std::string& text) {
    try {
        return profile_of(json::parse(text));
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("profile json: ") + e.what());
    }
}

std::string snapshots_to_json(const std::vector<Profile>& snaps) {
    json arr = json::array();
    for (const auto& p : snaps) arr.push_back(profile_json(p));
    return arr.dump() + "\n";
}

std::vector<Profile> snapshots_from_json(const std::string& text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("snapshots json: ") + e.what());
    }
    if (!arr.is_array()) throw InvalidArgument("snapshots json: expected an array");
    std::vector<Profile> out;
    for (const auto& j : arr) out.push_back(profile_of(j));
    return out;
}

std::string diagnostics_to_csv(const std::vector<DiagnosticsRecord>& records) {
    std::string out = std::string(kDiagnosticsHeader) + "\n";
    for (const auto& r : records) {
        out += shortest(r.t) + "," + shortest(r.energy) + "," + shortest(r.xt_maxnorm) + "," +
               shortest(r.min_xu) + "," + shortest(r.argmin_xu) + "," +
               (r.xu_at_zero ? shortest(*r.xu_at_zero) : std::string()) + "," +
               shortest(r.dissipation_increment) + "\n";
    }
    return out;
}

std::vector<DiagnosticsRecord> diagnostics_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kDiagnosticsHeader)
        throw InvalidArgument("diagnostics csv: unexpected header");
    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7) throw InvalidArgument("diagnostics csv: expected 7 fields");
        DiagnosticsRecord r;
        r.t = parse_double(f[0], "diagnostics csv");
        r.energy = parse_double(f[1], "diagnostics csv");
        r.xt_maxnorm = parse_double(f[2], "diagnostics csv");
        r.min_xu = parse_double(f[3], "diagnostics csv");
        r.argmin_xu = parse_double(f[4], "diagnostics csv");
        if (!f[5].empty()) r.xu_at_zero = parse_double(f[5], "diagnostics csv");
        r.dissipation_increment = parse_double(f[6], "diagnostics csv");
        out.push_back(r);
    }
    return out;
}

std::string graph_to_csv(const GraphCurve& curve) {
    std::string out = "# time=" + shortest(curve.time) +
                      ", monotone_in_x=" + (curve.monotone_in_x ? "true" : "false") + "\nx,u\n";
    for (const auto& [x, u] : curve.points) out += shortest(x) + "," + shortest(u) + "\n";
    return out;
}

std::string verdicts_to_json(const std::vector<Verdict>& verdicts) {
    json arr = json::array();
    for (const auto& v : verdicts) {
        json j{{"check", v.check},
               {"lhs", v.lhs},
               {"rhs", v.rhs},
               {"pass", v.pass},
               {"tolerance", v.tolerance}};
        if (!v.detail.empty()) j["detail"] = v.detail;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<Verdict> verdicts_from_json(const std::string& text) {
    std::vector<Verdict> out;
    try {
        for (const auto& j : json::parse(text)) {
            Verdict v;
            v.check = j.at("check").get<std::string>();
            v.lhs = j.at("lhs").get<double>();
            v.rhs = j.at("rhs").get<double>();
            v.pass = j.at("pass").get<bool>();
            v.tolerance = j.at("tolerance").get<double>();
            v.detail = j.value("detail", "");
            out.push_back(std::move(v));
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("verdicts json: ") + e.what());
    }
    return out;
}

std::string blowup_to_json(const BlowupReport& rep) {
    json j{{"t0", rep.t0},
           {"bracket", {rep.bracket.first, rep.bracket.second}},
           {"zero_location", rep.zero_location},
           {"x_location", rep.x_location},
           {"pre_t0_min_xu", rep.pre_t0_min_xu}};
    return j.dump(2) + "\n";
}

BlowupReport blowup_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        BlowupReport r;
        r.t0 = j.at("t0").get<double>();
        r.bracket = {j.at("bracket").at(0).get<double>(), j.at("bracket").at(1).get<double>()};
        r.zero_location = j.at("zero_location").get<double>();
        r.x_location = j.at("x_location").get<double>();
        r.pre_t0_min_xu = j.at("pre_t0_min_xu").get<double>();
        return r;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("blowup json: ") + e.what());
    }
}

std::string format_time(double t) { return shortest(t); }

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
    if (!out) throw InvalidArgument("write failed for " + path.string());
}

} // namespace gbc
