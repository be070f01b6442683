#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "spinmoment/kind.hpp"
#include "spinmoment/spin.hpp"
#include "spinmoment/states.hpp"

namespace spinmoment {

/// Single-site factor of an N-site operator product.
enum class SiteOp {
  Plus,                  ///< J+
  Minus,                 ///< J-
  XSquaredPlusYSquared,  ///< Jx^2 + Jy^2
  PlusMinus,             ///< J+ J-
  MinusPlus,             ///< J- J+
  CjShifted,             ///< Jx^2 + Jy^2 - C_J
  Identity,
};
inline constexpr std::size_t kSiteOpCount = 7;

using SiteOperatorProduct = std::vector<SiteOp>;

/// Dense d x d matrix for every SiteOp, built by matrix products from a set
/// of spin matrices.
struct SiteOperators {
  SpinQuantum j{1};
  double c_j = 0.0;
  std::array<Eigen::MatrixXcd, kSiteOpCount> mats;

  const Eigen::MatrixXcd& operator[](SiteOp op) const { return mats[static_cast<std::size_t>(op)]; }
};

/// `c_j` is the bound in the same units as `s`; callers scaling the spin
/// matrices by c must scale C_J by c^2.
SiteOperators make_site_operators(const SpinMatrices<double>& s, double c_j);

/// Operators for spin j with matrices scaled by `scale` and C_J (tabulated
/// unless given) scaled by scale^2.
SiteOperators make_site_operators(SpinQuantum j, double scale = 1.0,
                                  std::optional<double> c_j = std::nullopt);

/// <psi| O_1 (x) ... (x) O_N |psi>, applying each factor to its tensor index in
/// turn so that no d^N x d^N matrix is formed.
std::complex<double> expect_product(const Eigen::VectorXcd& psi, const SiteOperatorProduct& product,
                                    const SiteOperators& ops);
std::complex<double> expect_product(const Eigen::VectorXcd& psi, const SiteOperatorProduct& product,
                                    SpinQuantum j);

/// J^{s_1} (x) ... (x) J^{s_N}
SiteOperatorProduct lhs_product(const SignVector& s);
/// Bound factors on the first T sites, Jx^2 + Jy^2 on the rest. `l` (length T)
/// is read only for the HZ bound: + selects J+J-, - selects J-J+.
SiteOperatorProduct rhs_product(CriterionKind kind, int n_sites, const SignVector& l);

struct OracleOptions {
  std::size_t cap = kDefaultCap;
  /// Multiplies every spin matrix; C_J follows as scale^2.
  double scale = 1.0;
  std::optional<double> c_j;
};

/// Holds one dense state and its site operators so that many sign choices can
/// be evaluated without re-expanding the state.
class MomentOracle {
 public:
  explicit MomentOracle(const SymmetricCorrelatedState& state, const OracleOptions& options = {});

  /// |<prod_k J^{s_k}>|^2
  double lhs(const SignVector& s) const;
  /// Right-hand moment; throws DomainError if it is not real and non-negative.
  double rhs(CriterionKind kind, const SignVector& l) const;
  /// Real part of a Hermitian product, with the same checks as rhs().
  double hermitian(const SiteOperatorProduct& product) const;

  int n_sites() const { return n_sites_; }
  const SiteOperators& operators() const { return ops_; }
  const Eigen::VectorXcd& vector() const { return psi_; }

 private:
  int n_sites_;
  SiteOperators ops_;
  Eigen::VectorXcd psi_;
};

double lhs_moment(const SymmetricCorrelatedState& state, const SignVector& signs,
                  const OracleOptions& options = {});
double rhs_moment(const SymmetricCorrelatedState& state, CriterionKind kind, const SignVector& l_signs,
                  const OracleOptions& options = {});

}  // namespace spinmoment
