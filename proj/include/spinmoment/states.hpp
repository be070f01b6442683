#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "spinmoment/spin.hpp"

namespace spinmoment {

/// Equal amplitudes r_m = 1.
struct UniformMax {};
/// r_m = ((J-m)! (J+m)!)^((N-2)/2), the two-mode boson construction.
struct Bosonic {};
/// cos(theta)|0..0> + sin(theta)|1..1>, spin 1/2 only.
struct GeneralizedGhz {
  double theta = 0.0;
};
/// (1, r, 1), spin 1 only.
struct SpinOneR {
  double r = 1.0;
};
struct Custom {
  Eigen::VectorXd r;
};

using StateFamily = std::variant<UniformMax, Bosonic, GeneralizedGhz, SpinOneR, Custom>;

/// "uniform-max", "bosonic", "ghz", "spin1r" or "custom".
std::string family_name(const StateFamily& family);

/// Correlated state (1/sqrt(n)) sum_m r_m |J,m>^{(x)N}.
///
/// `amplitudes` holds r_m indexed by m + J. Entries too large for a double are
/// +-inf there; `log_amplitudes` (log|r_m|, -inf where r_m = 0) always carries
/// the exact magnitude, and the sign is read from `amplitudes`.
struct SymmetricCorrelatedState {
  SpinQuantum j{1};
  int n_sites = 2;
  Eigen::VectorXd amplitudes;
  Eigen::VectorXd log_amplitudes;
  double norm_sq = 0.0;
  double log_norm_sq = 0.0;

  /// Validates and fills in the log representation.
  static SymmetricCorrelatedState from_amplitudes(SpinQuantum j, int n_sites, Eigen::VectorXd r);
  static SymmetricCorrelatedState from_log_amplitudes(SpinQuantum j, int n_sites,
                                                      Eigen::VectorXd log_abs,
                                                      const Eigen::VectorXd& signs);

  int dim() const { return j.dim(); }
  /// r_m == r_{-m} exactly.
  bool is_symmetric() const;
  /// Sign of r_m as -1, 0 or +1.
  int sign(Eigen::Index i) const;
  /// r / sqrt(n), computed through the log representation.
  Eigen::VectorXd normalized_amplitudes() const;
};

SymmetricCorrelatedState make_state(const StateFamily& family, SpinQuantum j, int n_sites);

inline constexpr std::size_t kDefaultCap = std::size_t{1} << 20;

/// d^N, or nullopt when it overflows std::size_t.
std::optional<std::size_t> hilbert_dimension(int dim, int n_sites);

/// Unit vector over the product basis. Site 1 is the most significant base-d
/// digit and digit value is m + J.
Eigen::VectorXcd dense_vector(const SymmetricCorrelatedState& state, std::size_t cap = kDefaultCap);

/// Parses "0.5,1,0.5" or "[0.5, 1, 0.5]"; rejects empty lists and non-finite
/// entries.
Eigen::VectorXd parse_amplitudes(std::string_view text);

}  // namespace spinmoment
