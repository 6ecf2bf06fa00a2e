#pragma once

#include <string>
#include <vector>

namespace toric_limits {

// Runs the toric-limits command line: subcommands subdivide, fan, certify,
// sample, hausdorff, degenerate, sequence-limit, repro. Writes reports, CSVs,
// and a run manifest into --out-dir, and prints the report to stdout.
// Returns the process exit code: 0 on success (converged where a verdict
// applies), 1 on validation errors (bad flags or malformed inputs), 2 when a
// verification verdict is inconclusive.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace toric_limits
