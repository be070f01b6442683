#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinmoment/criteria.hpp"
#include "spinmoment/kind.hpp"
#include "spinmoment/spin.hpp"
#include "spinmoment/states.hpp"

namespace spinmoment {

struct OptimizerOptions {
  /// Random starts; the uniform and bosonic starts are always run in addition.
  int restarts = 20;
  std::uint64_t seed = kDefaultSeed;
  /// Fold r_m = r_{-m}.
  bool symmetric = true;
  double tol = 1e-10;
  int max_iterations = 2000;
  std::optional<double> c_j;
};

struct RestartTrace {
  int index = 0;
  double b = 0.0;
  bool converged = false;
};

struct OptimizationReport {
  Eigen::VectorXd best_r;  ///< non-negative, sum r_m^2 = 1
  double best_b = 0.0;
  int restarts_run = 0;
  bool converged = false;  ///< the restart that produced best_r converged
  std::vector<RestartTrace> trace;
};

/// Closed-form B for amplitudes r (any positive scale).
double amplitude_b(SpinQuantum j, int n_sites, CriterionKind kind, const Eigen::VectorXd& r,
                   std::optional<double> c_j = std::nullopt);

OptimizationReport optimize_amplitudes(SpinQuantum j, int n_sites, CriterionKind kind,
                                       const OptimizerOptions& options = {});

struct MinSitesResult {
  int d = 0;
  CriterionKind kind;
  std::optional<int> min_n;
  double b_at_min_n = 0.0;  ///< best B at min_n, or at n_max when none found
  double b_before = 0.0;    ///< best B at min_n - 1 (0 when min_n is 2)
  int n_max_searched = 0;
  Eigen::VectorXd best_r;
};

inline constexpr double kViolationMargin = 1e-9;

MinSitesResult min_sites_for_violation(SpinQuantum j, CriterionKind kind, int n_max,
                                       const OptimizerOptions& options = {},
                                       double margin = kViolationMargin);

enum class ScanAxis { VaryN, VaryD };
struct Optimized {};
using StateSource = std::variant<StateFamily, Optimized>;

struct ScanRequest {
  ScanAxis axis = ScanAxis::VaryN;
  std::vector<CriterionKind> kinds;
  std::vector<int> twice_js;
  std::vector<int> n_values;
  StateSource source = StateFamily{Bosonic{}};
  OptimizerOptions optimizer;
  CriteriaOptions criteria;
};

struct ScanRow {
  int twice_j = 1;
  int n = 2;
  int t = 0;
  std::string family;
  CriterionKind kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double b = 0.0;
  bool violated = false;
  Eigen::VectorXd r;  ///< normalized amplitudes
};

/// VaryN rows run over N for each J; VaryD rows run over J for each N. Kinds
/// vary fastest. Points where a kind does not apply (T > N) are skipped.
std::vector<ScanRow> scan_curve(const ScanRequest& request);

}  // namespace spinmoment
