#pragma once

#include <cstddef>
#include <ostream>

#include "cli/config.hpp"
#include "cli/table.hpp"

namespace spinmoment::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitInfeasible = 3,
};

inline constexpr double kVerifyTolerance = 1e-9;

struct VerifySummary {
  std::size_t points = 0;
  double max_discrepancy = 0.0;
};

Table cmd_eval(const RunConfig& config);
Table cmd_verify(const RunConfig& config, VerifySummary& summary);
Table cmd_scan(const RunConfig& config);
Table cmd_min_sites(const RunConfig& config);
Table cmd_cj_table(const RunConfig& config);

/// Relative difference, 0 when both are equal (including both infinite or both
/// undefined) and +inf when exactly one is non-finite.
double relative_discrepancy(double a, double b);

/// Runs the configured command, writes the table to config.output (or `out`)
/// and diagnostics to `err`. Returns the process exit code.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace spinmoment::cli
