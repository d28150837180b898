#pragma once

#include "gbc/analysis.hpp"
#include "gbc/model.hpp"
#include "gbc/solver.hpp"
#include "gbc/transform.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gbc {

/// Everything a CLI run needs beyond the problem itself.
struct RunConfig {
    ProblemSpec spec;
    std::string preset = "custom";
    /// Empty: a default schedule dense near t = 0.
    std::vector<double> output_times;
    /// Times at which graph_t<time>.csv is written; added to the output times.
    std::vector<double> graph_times;
    bool solve_u = false;
    double gradient_cap = 50.0;
    double equivalence_fraction = 0.5;
    /// Absolute window length; overrides fraction * t0 when set.
    std::optional<double> equivalence_window;
    double equivalence_tolerance = 5e-3;
    int equivalence_outputs = 10;
    std::uint64_t seed = 1;
    int property_samples = 1000;
};

/// Reads a JSON object with flat dotted keys ("f.kind") or nested objects
/// ({"f": {"kind": ...}}). Unknown keys and bad values raise ConfigError.
/// Keys absent from the text keep the value already in base.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
/// Flat-keyed JSON that parse_config reads back to an equal config.
std::string dump_config(const RunConfig& cfg);

/// Output schedule used when a config names none.
std::vector<double> default_output_times(double t_end);

std::string profile_to_csv(const Profile& p);
Profile profile_from_csv(const std::string& text, double a, double b, double time = 0.0);
std::string profile_to_json(const Profile& p);
Profile profile_from_json(const std::string& text);

std::string snapshots_to_json(const std::vector<Profile>& snaps);
std::vector<Profile> snapshots_from_json(const std::string& text);

inline constexpr const char* kDiagnosticsHeader =
    "t,energy,xt_maxnorm,min_xu,argmin_xu,xu_at_zero,dissipation_increment";
std::string diagnostics_to_csv(const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> diagnostics_from_csv(const std::string& text);

std::string graph_to_csv(const GraphCurve& curve);

std::string verdicts_to_json(const std::vector<Verdict>& verdicts);
std::vector<Verdict> verdicts_from_json(const std::string& text);

std::string blowup_to_json(const BlowupReport& rep);
BlowupReport blowup_from_json(const std::string& text);

/// Shortest decimal text that reads back to t exactly; used in graph file names.
std::string format_time(double t);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace gbc
