#include "spinmoment/analytic.hpp"

#include <cmath>
#include <limits>

#include "spinmoment/errors.hpp"

namespace spinmoment {

namespace {

// Diagonal elements in the |J,m> basis for index i = m + J (all integers
// except the Casimir bracket).
double minus_plus_diag(int tj, int i) { return double(tj - i) * double(i + 1); }  // J-J+
double plus_minus_diag(int tj, int i) { return double(i) * double(tj - i + 1); }  // J+J-
double transverse_diag(int tj, int i) {                                           // J(J+1)-m^2
  return 0.5 * (minus_plus_diag(tj, i) + plus_minus_diag(tj, i));
}

SignedLog amplitude(const ClosedFormInput& in, int i) {
  const int s = static_cast<int>(in.signs(i));
  if (s == 0) return {};
  return {in.log_amplitudes(i), s};
}

SignedLog log_norm_sq(const ClosedFormInput& in) {
  SignedLogSum sum;
  for (int i = 0; i < in.j.dim(); ++i) sum.add(amplitude(in, i).pow(2));
  return sum.result();
}

// sum_m r_m r_{m+1} ((J-m)(J+m+1))^{N/2}
SignedLog ladder_numerator(const ClosedFormInput& in) {
  const int tj = in.j.twice_j();
  SignedLogSum sum;
  for (int i = 0; i + 1 < in.j.dim(); ++i) {
    SignedLog coeff{0.5 * in.n_sites * std::log(minus_plus_diag(tj, i)), 1};
    sum.add(amplitude(in, i) * amplitude(in, i + 1) * coeff);
  }
  return sum.result();
}

struct BracketCounts {
  int transverse = 0;  // J(J+1) - m^2
  int shifted = 0;     // J(J+1) - m^2 - C_J
  int plus_minus = 0;
  int minus_plus = 0;
};

// sum_m r_m^2 prod_k bracket_k(m)
SignedLog bracket_sum(const ClosedFormInput& in, const BracketCounts& c) {
  const int tj = in.j.twice_j();
  SignedLogSum sum;
  for (int i = 0; i < in.j.dim(); ++i) {
    const double a = transverse_diag(tj, i);
    // C_J is subtracted before any exponentiation.
    SignedLog term = amplitude(in, i).pow(2) * SignedLog::of(a).pow(c.transverse) *
                     SignedLog::of(a - in.c_j).pow(c.shifted) *
                     SignedLog::of(plus_minus_diag(tj, i)).pow(c.plus_minus) *
                     SignedLog::of(minus_plus_diag(tj, i)).pow(c.minus_plus);
    sum.add(term);
  }
  return sum.result();
}

SignedLog divide(SignedLog a, SignedLog b) {
  if (a.is_zero()) return {};
  return {a.log_abs - b.log_abs, a.sign * b.sign};
}

}  // namespace

ClosedFormInput ClosedFormInput::from_state(const SymmetricCorrelatedState& state, double c_j,
                                            int t_sites) {
  ClosedFormInput in;
  in.j = state.j;
  in.n_sites = state.n_sites;
  in.log_amplitudes = state.log_amplitudes;
  in.signs.resize(state.dim());
  for (int i = 0; i < state.dim(); ++i) in.signs(i) = state.sign(i);
  in.c_j = c_j;
  in.t_sites = t_sites;
  in.validate();
  return in;
}

ClosedFormInput ClosedFormInput::from_state(const SymmetricCorrelatedState& state, int t_sites) {
  return from_state(state, cj_bound(state.j).c_j, t_sites);
}

void ClosedFormInput::validate() const {
  if (j.twice_j() < 1) throw InvalidArgument("closed forms need J >= 1/2");
  if (n_sites < 2) throw InvalidArgument("closed forms need N >= 2");
  if (log_amplitudes.size() != j.dim() || signs.size() != j.dim()) {
    throw InvalidArgument("amplitude vectors must have length 2J+1");
  }
  if (t_sites < 0 || t_sites > n_sites) throw InvalidArgument("need 0 <= T <= N");
  if (!std::isfinite(c_j)) throw InvalidArgument("C_J must be finite");
}

double Moments::ratio() const {
  if (rhs.is_zero()) {
    return lhs.is_zero() ? std::numeric_limits<double>::quiet_NaN()
                         : std::numeric_limits<double>::infinity();
  }
  if (rhs.sign < 0) throw DomainError("right-hand moment is negative");
  if (lhs.is_zero()) return 0.0;
  return std::exp(0.5 * (lhs.log_abs - rhs.log_abs));
}

bool Moments::violated() const {
  if (lhs.is_zero()) return false;
  if (rhs.is_zero() || rhs.sign < 0) return true;
  return lhs.log_abs - rhs.log_abs > std::log1p(kEqualityTolerance);
}

Moments analytic_moments(const ClosedFormInput& in, CriterionKind kind, const SignVector& l) {
  in.validate();
  kind.validate(in.n_sites);
  const int n = in.n_sites;
  const int t = kind.quantum_sites(n);

  BracketCounts counts;
  counts.transverse = n - t;
  if (kind.bound_kind() == Bound::CJ) {
    counts.shifted = t;
  } else {
    if (static_cast<int>(l.size()) != t) {
      throw InvalidArgument("HZ bound needs " + std::to_string(t) + " l signs");
    }
    for (Sign s : l) ++(s == Sign::Plus ? counts.plus_minus : counts.minus_plus);
  }

  const SignedLog norm = log_norm_sq(in);
  if (norm.is_zero()) throw InvalidArgument("amplitude vector is all zero");
  const SignedLog amp = divide(ladder_numerator(in), norm);

  Moments m;
  m.lhs = amp.pow(2);
  m.rhs = divide(bracket_sum(in, counts), norm);
  return m;
}

Moments analytic_moments(const ClosedFormInput& in, CriterionKind kind) {
  return analytic_moments(in, kind, canonical_l(kind.quantum_sites(in.n_sites)));
}

double b_bell(const ClosedFormInput& in) {
  return analytic_moments(in, CriterionKind::bell()).ratio();
}

double b_ent_cj(const ClosedFormInput& in) {
  return analytic_moments(in, CriterionKind::ent_cj()).ratio();
}

double b_ent_hz(const ClosedFormInput& in) {
  return analytic_moments(in, CriterionKind::ent_hz()).ratio();
}

double b_steer_t(const ClosedFormInput& in) {
  in.validate();
  return analytic_moments(in, CriterionKind::with_quantum_sites(in.t_sites, in.n_sites)).ratio();
}

double b_spin1_closed_forms(double r, int n_sites, Spin1Form form, int t_sites) {
  if (!(r >= 0.0)) throw InvalidArgument("r must be non-negative");
  if (n_sites < 2) throw InvalidArgument("need N >= 2");
  const double n = n_sites;
  const double r2 = r * r;
  const double numerator = std::pow(2.0, (n + 2.0) / 2.0) * r;
  double bracket = 0.0;
  switch (form) {
    case Spin1Form::Bell:
      bracket = std::pow(2.0, n) * r2 + 2.0;
      break;
    case Spin1Form::EntanglementCJ:
      bracket = std::pow(25.0 / 16.0, n) * r2 + 2.0 * std::pow(9.0 / 16.0, n);
      break;
    case Spin1Form::SteeringPrinted:
      bracket = std::pow(9.0 / 8.0, n) + r2 * std::pow(2.0, n - 5.0) * 25.0;
      break;
    case Spin1Form::SteeringT: {
      if (t_sites < 0 || t_sites > n_sites) throw InvalidArgument("need 0 <= T <= N");
      const double t = t_sites;
      bracket = 2.0 * std::pow(9.0 / 16.0, t) + r2 * std::pow(2.0, n - t) * std::pow(25.0 / 16.0, t);
      break;
    }
  }
  return numerator / (std::sqrt(r2 + 2.0) * std::sqrt(bracket));
}

double ghz_cj_detection_threshold(int n_sites) {
  if (n_sites < 2) throw InvalidArgument("need N >= 2");
  return std::ldexp(1.0, -(n_sites - 1));
}

}  // namespace spinmoment
