#pragma once

#include <filesystem>
#include <iosfwd>

#include "betamodel/montecarlo.hpp"

namespace betamodel::mc {

enum class SimulationKind { rejection, distribution };

struct SimulationConfig {
  SimulationKind kind = SimulationKind::rejection;
  ExperimentSpec spec;
};

// key = value lines, '#' comments. Keys:
//   kind        rejection | distribution
//   n, r        integers; r also accepts "n" or "n-<k>"
//   beta_rule   linear | homogeneous_tail
//   L_n         number, loglog, sqrt_loglog, sqrt_log, clog:<c>
//   pairs       comma-separated i-j pairs, e.g. "1-50, 50-200"
//   methods     comma-separated subset of pair, cauchy, lrt
//   alpha, reps, seed, threads, tolerance, max_iterations
//   pvalues     upper | two-sided | one-sided
// Unknown keys and malformed values are Parse errors naming the line.
SimulationConfig parse_simulation_config(std::istream& in);
SimulationConfig read_simulation_config(const std::filesystem::path& path);

}  // namespace betamodel::mc
