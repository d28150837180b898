#pragma once

#include "gbc/io.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gbc {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int config_error = 2;
inline constexpr int not_cauchy = 3;
inline constexpr int no_blowup = 3;
inline constexpr int solver_failure = 4;
} // namespace exit_code

struct CliOptions {
    std::optional<std::filesystem::path> config;
    std::filesystem::path out = "run";
    std::optional<std::string> preset;
    std::optional<int> cells;
    std::optional<double> t_end;
    std::optional<std::uint64_t> seed;
};

/// interior-blowup, boundary-blowup, steady-demo, custom.
const std::vector<std::string>& preset_names();
/// Throws ConfigError for an unknown name.
RunConfig preset_config(const std::string& name);
/// Human-readable notes when a config sits on the wrong side of a blow-up threshold.
std::vector<std::string> preset_warnings(const RunConfig& cfg);

/// Preset, then config file, then command-line overrides.
RunConfig resolve_config(const CliOptions& opts);

/// Each command writes its files under opts.out (or run_dir) and returns an exit code.
int cmd_simulate(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& run_dir, std::optional<std::uint64_t> seed,
               std::ostream& out, std::ostream& err);
int cmd_equivalence(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_steady(const CliOptions& opts, std::ostream& out, std::ostream& err);

/// The verdicts cmd_verify writes, without touching the file system.
std::vector<Verdict> verify_run(const RunConfig& cfg, const Trajectory& traj,
                                const std::vector<double>& cauchy_gaps,
                                const std::optional<BlowupReport>& blowup);

struct EquivalenceResult {
    std::optional<double> t0;
    double window = 0.0;
    std::vector<double> times;
    std::vector<double> gaps;
    double max_gap = 0.0;
    bool pass = false;
};

/// Solves both formulations on the window and compares in x-coordinates.
/// Throws NoBlowup when no window is configured and t0 is not found.
EquivalenceResult run_equivalence(const RunConfig& cfg);

} // namespace gbc
