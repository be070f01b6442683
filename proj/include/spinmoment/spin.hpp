#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "spinmoment/errors.hpp"

namespace spinmoment {

/// Spin quantum number J held as the integer 2J, so half-integers stay exact.
class SpinQuantum {
 public:
  explicit constexpr SpinQuantum(int twice_j) : twice_j_(twice_j) {
    if (twice_j < 0) throw InvalidArgument("twice_j must be non-negative");
  }

  /// Accepts "1/2", "3/2", "2", "2/2", ... Any other denominator is rejected.
  static SpinQuantum parse(std::string_view text);

  constexpr int twice_j() const { return twice_j_; }
  constexpr int dim() const { return twice_j_ + 1; }
  constexpr double value() const { return 0.5 * twice_j_; }

  /// "1/2", "1", "3/2", ...
  std::string to_string() const;

  friend constexpr auto operator<=>(SpinQuantum, SpinQuantum) = default;

 private:
  int twice_j_;
};

/// Dense spin-J operators in the |J,m> basis, ordered by ascending m.
template <typename Scalar = double>
struct SpinMatrices {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  SpinQuantum j{1};
  Matrix jx, jy, jz, jplus, jminus;
};

/// Builds Jx, Jy, Jz, J+ and J-, all multiplied by `scale` (2 gives the Pauli
/// convention for spin 1/2).
template <typename Scalar = double>
SpinMatrices<Scalar> build_spin_matrices(SpinQuantum j, Scalar scale = Scalar(1)) {
  using Complex = std::complex<Scalar>;
  using Matrix = typename SpinMatrices<Scalar>::Matrix;
  if (j.twice_j() < 1) throw InvalidArgument("spin matrices need J >= 1/2");

  const int tj = j.twice_j();
  const int d = j.dim();
  SpinMatrices<Scalar> out;
  out.j = j;
  out.jz = Matrix::Zero(d, d);
  out.jminus = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    // m = i - J, so 2m = 2i - 2J.
    out.jz(i, i) = Complex(scale * Scalar(2 * i - tj) / Scalar(2), 0);
  }
  // <m-1|J-|m> = sqrt((J+m)(J-m+1)) = sqrt(i (2J - i + 1)) for m = i - J.
  for (int i = 1; i < d; ++i) {
    out.jminus(i - 1, i) = Complex(scale * std::sqrt(Scalar(i) * Scalar(tj - i + 1)), 0);
  }
  out.jplus = out.jminus.adjoint();
  out.jx = (out.jplus + out.jminus) / Scalar(2);
  out.jy = (out.jplus - out.jminus) / Complex(0, 2);
  return out;
}

enum class BoundSource { Tabulated, Computed };

/// Lower bound C_J of Var(Jx) + Var(Jy) over pure spin-J states.
struct UncertaintyBound {
  SpinQuantum j{1};
  double c_j = 0.0;
  BoundSource source = BoundSource::Tabulated;
};

inline constexpr std::uint64_t kDefaultSeed = 20100527;

/// Published values for J = 1/2 .. 4; empty beyond.
std::optional<double> tabulated_cj(SpinQuantum j);

/// Tabulated value when available, otherwise a (memoized) compute_cj result.
UncertaintyBound cj_bound(SpinQuantum j);

/// Var(Jx) + Var(Jy) for an arbitrary (not necessarily normalized) state.
double transverse_variance(const SpinMatrices<double>& s, const Eigen::VectorXcd& psi);

/// Local minimum of transverse_variance reached by simplex descent from `start`.
double cj_local_minimum(SpinQuantum j, const Eigen::VectorXcd& start, double tol = 1e-9);

/// Multi-start minimization of Var(Jx) + Var(Jy). Throws ConvergenceError if
/// no restart converges.
UncertaintyBound compute_cj(SpinQuantum j, int restarts = 50, double tol = 1e-9,
                            std::uint64_t seed = kDefaultSeed);

}  // namespace spinmoment
