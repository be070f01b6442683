#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "spinmoment/analytic.hpp"
#include "spinmoment/kind.hpp"
#include "spinmoment/oracle.hpp"
#include "spinmoment/states.hpp"

namespace spinmoment {

enum class Backend { Oracle, Analytic };
enum class Strategy {
  Canonical,   ///< s all minus, l = (+, -, ..., -)
  Exhaustive,  ///< best over every s and l, via the oracle
};

struct SignChoice {
  SignVector s;
  SignVector l;  ///< empty unless the bound is HZ
};

struct CriterionResult {
  CriterionKind kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double b = 0.0;  ///< +inf when R = 0 < L; NaN (undefined) when L = R = 0
  bool violated = false;
  SignChoice signs;
  Backend backend = Backend::Analytic;

  bool b_defined() const { return !std::isnan(b); }
};

struct CriteriaOptions {
  std::size_t cap = kDefaultCap;
  std::optional<double> c_j;
  int exhaustive_max_sites = 16;
};

CriterionResult evaluate(const SymmetricCorrelatedState& state, CriterionKind kind, Strategy strategy,
                         const CriteriaOptions& options = {});

/// One fixed sign choice through the dense oracle.
CriterionResult evaluate_oracle(const MomentOracle& oracle, CriterionKind kind, const SignChoice& signs);
/// Closed-form evaluation; `signs.s` must be all-equal (other patterns give L = 0
/// for correlated states and are not modelled in closed form).
CriterionResult evaluate_analytic(const SymmetricCorrelatedState& state, CriterionKind kind,
                                  const CriteriaOptions& options = {});

/// C_J-bounded verdicts for T = 0 .. t_max quantum sites.
std::vector<CriterionResult> nested_verdicts(const SymmetricCorrelatedState& state, int t_max,
                                             const CriteriaOptions& options = {});

/// Verdict from plain L and R (violated iff L > R beyond kEqualityTolerance).
CriterionResult verdict_from_moments(CriterionKind kind, double lhs, double rhs);

}  // namespace spinmoment
