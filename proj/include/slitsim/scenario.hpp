#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "slitsim/config.hpp"

namespace slitsim {

// Process exit codes shared by the library runner and the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 1,  // a physics/validation check failed
    exit_config = 2,      // configuration (or override) unusable
    exit_io = 3,
};

enum class Command { pattern, sorkin, sweep, validate };

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<bool> loops;    // force looped paths on or off
    std::optional<int> max_hops;  // override the hop-order cutoff
    bool plot = false;
};

ScenarioConfig apply_overrides(ScenarioConfig config, const RunOptions& options);

// Executes one command against a parsed configuration, writing artifacts to
// options.out_dir and progress/diagnostics to log. Incomplete outputs are
// removed when a run fails.
int run_scenario(const ScenarioConfig& config, Command command, const RunOptions& options,
                 std::ostream& log);

}  // namespace slitsim
