#pragma once

#include <Eigen/Dense>

#include "spinmoment/kind.hpp"
#include "spinmoment/logsum.hpp"
#include "spinmoment/spin.hpp"
#include "spinmoment/states.hpp"

namespace spinmoment {

/// Everything the closed forms read: amplitudes in log form, C_J and the
/// number of quantum sites T used by b_steer_t.
struct ClosedFormInput {
  SpinQuantum j{1};
  int n_sites = 2;
  Eigen::VectorXd log_amplitudes;  ///< log|r_m|, -inf where r_m = 0
  Eigen::VectorXd signs;           ///< sign of r_m as -1, 0, +1
  double c_j = 0.0;
  int t_sites = 0;

  static ClosedFormInput from_state(const SymmetricCorrelatedState& state, double c_j,
                                    int t_sites = 0);
  /// Uses cj_bound(state.j).
  static ClosedFormInput from_state(const SymmetricCorrelatedState& state, int t_sites = 0);

  void validate() const;
};

/// Left and right sides of a moment inequality, both in log form so that
/// k^N-type sums survive large N.
struct Moments {
  SignedLog lhs;
  SignedLog rhs;

  double lhs_value() const { return lhs.value(); }
  double rhs_value() const { return rhs.value(); }
  /// sqrt(L/R); +inf when R = 0 < L, NaN when L = R = 0.
  double ratio() const;
  /// L > R, with a 1e-12 relative margin so that rounding at L = R does not
  /// count as a violation.
  bool violated() const;
};

inline constexpr double kEqualityTolerance = 1e-12;

/// Moments for the canonical sign pattern (s all minus, l = + - - ...) or the
/// given l signs for HZ-bounded kinds.
Moments analytic_moments(const ClosedFormInput& in, CriterionKind kind);
Moments analytic_moments(const ClosedFormInput& in, CriterionKind kind, const SignVector& l);

/// sum_m r_m r_{m+1} ((J-m)(J+m+1))^{N/2} / sqrt(n sum_m r_m^2 [J(J+1)-m^2]^N)
double b_bell(const ClosedFormInput& in);
/// Bell numerator over sqrt(n sum_m r_m^2 [J(J+1)-m^2-C_J]^N).
double b_ent_cj(const ClosedFormInput& in);
/// Generalized HZ entanglement ratio with l = (+, -, ..., -): J+J- on site 1
/// and J-J+ on the remaining sites.
double b_ent_hz(const ClosedFormInput& in);
/// C_J-bounded LHS(T,N) ratio with T = in.t_sites; T = 0 is b_bell and T = N is
/// b_ent_cj.
double b_steer_t(const ClosedFormInput& in);

/// Printed spin-1 closed forms for the state (1, r, 1).
enum class Spin1Form {
  Bell,            ///< 2^{(N+2)/2} r / ((r^2+2)^{1/2} [2^N r^2 + 2]^{1/2})
  EntanglementCJ,  ///< denominator bracket (25/16)^N r^2 + 2 (9/16)^N
  SteeringPrinted, ///< denominator bracket (9/8)^N + r^2 2^{N-5} 25, as printed
  SteeringT,       ///< denominator bracket 2 (9/16)^T + r^2 2^{N-T} (25/16)^T
};
double b_spin1_closed_forms(double r, int n_sites, Spin1Form form, int t_sites = 1);

/// sin(2 theta) above which the C_J entanglement criterion detects the
/// generalized GHZ state: 2^{-(N-1)}.
double ghz_cj_detection_threshold(int n_sites);

}  // namespace spinmoment
