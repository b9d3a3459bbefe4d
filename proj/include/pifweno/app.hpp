#pragma once

// The `run` and `convergence` commands behind the command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pifweno/io.hpp"

namespace pifweno {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolverFailure = 3;

struct CliOverrides {
    std::optional<std::string> output_dir;
    std::optional<std::vector<int>> mesh;
    std::optional<double> cfl;
    bool no_limiter = false;
};

void apply_overrides(RunConfig& cfg, const CliOverrides& o);

/// Run one simulation and write diagnostics, snapshots and summary.json
/// (plus failure.json on a failed run) under cfg.output_dir. Returns kExitOk
/// or kExitSolverFailure; configuration problems throw ConfigError.
int run_simulation(const RunConfig& cfg, std::ostream& log);

/// Run the problem on every mesh in cfg.convergence_meshes and write
/// convergence.csv. Needs a problem with an analytic solution.
int run_convergence(const RunConfig& cfg, std::ostream& log);

} // namespace pifweno
