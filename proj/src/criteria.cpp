#include "spinmoment/criteria.hpp"

#include <algorithm>
#include <limits>

#include "spinmoment/detail/parallel.hpp"
#include "spinmoment/errors.hpp"

namespace spinmoment {

namespace {

// Flip canonical[i] where bit (n-1-i) of key is set, so key order is
// lexicographic with site 1 most significant and key 0 is canonical.
SignVector signs_for_key(const SignVector& canonical, std::uint64_t key) {
  SignVector out = canonical;
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((key >> (n - 1 - i)) & 1u) out[i] = flip(out[i]);
  }
  return out;
}

double resolve_cj(const SymmetricCorrelatedState& state, const CriteriaOptions& options) {
  return options.c_j ? *options.c_j : cj_bound(state.j).c_j;
}

bool oracle_feasible(const SymmetricCorrelatedState& state, std::size_t cap) {
  const auto size = hilbert_dimension(state.dim(), state.n_sites);
  return size && *size <= cap;
}

CriterionResult exhaustive(const SymmetricCorrelatedState& state, CriterionKind kind,
                           const CriteriaOptions& options) {
  const int n = state.n_sites;
  if (n > options.exhaustive_max_sites) {
    throw InfeasibleError("exhaustive sign search is limited to N <= " +
                          std::to_string(options.exhaustive_max_sites) + " (got N=" +
                          std::to_string(n) + ")");
  }
  if (!oracle_feasible(state, options.cap)) {
    throw InfeasibleError("exhaustive sign search needs the dense oracle, but d^N = " +
                          std::to_string(state.dim()) + "^" + std::to_string(n) +
                          " exceeds the cap " + std::to_string(options.cap));
  }
  MomentOracle oracle(state, {options.cap, 1.0, options.c_j});

  const int t = kind.quantum_sites(n);
  const bool uses_l = kind.bound_kind() == Bound::HZ && t > 0;
  const SignVector s0 = canonical_s(n);
  const SignVector l0 = uses_l ? canonical_l(t) : SignVector{};

  // L depends only on s and R only on l, so the best pair is the best s with
  // the best l.
  const std::size_t s_count = std::size_t{1} << n;
  const std::size_t l_count = uses_l ? std::size_t{1} << t : 1;
  const auto lhs = detail::parallel_map(s_count, [&](std::size_t k) {
    return oracle.lhs(signs_for_key(s0, k));
  });
  const auto rhs = detail::parallel_map(l_count, [&](std::size_t k) {
    return oracle.rhs(kind, signs_for_key(l0, k));
  });

  const double l_max = *std::max_element(lhs.begin(), lhs.end());
  const double r_min = *std::min_element(rhs.begin(), rhs.end());
  std::size_t s_key = 0;
  for (std::size_t k = 0; k < s_count; ++k) {
    if (lhs[k] >= l_max * (1.0 - kEqualityTolerance)) {
      s_key = k;
      break;
    }
  }
  std::size_t l_key = 0;
  if (l_max == 0.0) {
    // Every B is 0 or undefined; prefer a defined 0.
    for (std::size_t k = 0; k < l_count; ++k) {
      if (rhs[k] > 0.0) {
        l_key = k;
        break;
      }
    }
  } else {
    for (std::size_t k = 0; k < l_count; ++k) {
      if (rhs[k] <= r_min * (1.0 + kEqualityTolerance)) {
        l_key = k;
        break;
      }
    }
  }
  CriterionResult res = verdict_from_moments(kind, lhs[s_key], rhs[l_key]);
  res.signs = {signs_for_key(s0, s_key), uses_l ? signs_for_key(l0, l_key) : SignVector{}};
  res.backend = Backend::Oracle;
  return res;
}

}  // namespace

CriterionResult verdict_from_moments(CriterionKind kind, double lhs, double rhs) {
  if (lhs < 0.0 || rhs < 0.0) throw DomainError("moments must be non-negative");
  CriterionResult res;
  res.kind = kind;
  res.lhs = lhs;
  res.rhs = rhs;
  if (rhs == 0.0) {
    res.b = lhs == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                       : std::numeric_limits<double>::infinity();
  } else {
    res.b = std::sqrt(lhs / rhs);
  }
  res.violated = lhs > rhs * (1.0 + kEqualityTolerance);
  return res;
}

CriterionResult evaluate_oracle(const MomentOracle& oracle, CriterionKind kind, const SignChoice& signs) {
  const int n = oracle.n_sites();
  kind = kind.normalized(n);
  CriterionResult res = verdict_from_moments(kind, oracle.lhs(signs.s), oracle.rhs(kind, signs.l));
  res.signs = signs;
  res.backend = Backend::Oracle;
  return res;
}

CriterionResult evaluate_analytic(const SymmetricCorrelatedState& state, CriterionKind kind,
                                  const CriteriaOptions& options) {
  const int n = state.n_sites;
  kind = kind.normalized(n);
  const int t = kind.quantum_sites(n);
  const bool uses_l = kind.bound_kind() == Bound::HZ && t > 0;
  // Only the C_J bound reads C_J; skip resolving it (possibly by computation)
  // otherwise.
  const bool needs_cj = kind.bound_kind() == Bound::CJ && t > 0;
  const double c_j = needs_cj ? resolve_cj(state, options) : 0.0;
  const auto in = ClosedFormInput::from_state(state, c_j, t);
  const Moments m = analytic_moments(in, kind);

  CriterionResult res;
  res.kind = kind;
  res.lhs = m.lhs_value();
  res.rhs = m.rhs_value();
  res.b = m.ratio();
  res.violated = m.violated();
  res.signs = {canonical_s(n), uses_l ? canonical_l(t) : SignVector{}};
  res.backend = Backend::Analytic;
  return res;
}

CriterionResult evaluate(const SymmetricCorrelatedState& state, CriterionKind kind, Strategy strategy,
                         const CriteriaOptions& options) {
  kind = kind.normalized(state.n_sites);
  if (strategy == Strategy::Exhaustive) return exhaustive(state, kind, options);

  if (state.is_symmetric() || !oracle_feasible(state, options.cap)) {
    return evaluate_analytic(state, kind, options);
  }
  const int t = kind.quantum_sites(state.n_sites);
  const bool uses_l = kind.bound_kind() == Bound::HZ && t > 0;
  MomentOracle oracle(state, {options.cap, 1.0, options.c_j});
  return evaluate_oracle(oracle, kind,
                         {canonical_s(state.n_sites), uses_l ? canonical_l(t) : SignVector{}});
}

std::vector<CriterionResult> nested_verdicts(const SymmetricCorrelatedState& state, int t_max,
                                             const CriteriaOptions& options) {
  if (t_max < 0 || t_max > state.n_sites) throw InvalidArgument("need 0 <= t_max <= N");
  std::vector<CriterionResult> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    out.push_back(evaluate(state, CriterionKind::with_quantum_sites(t, state.n_sites, Bound::CJ),
                           Strategy::Canonical, options));
  }
  return out;
}

}  // namespace spinmoment
