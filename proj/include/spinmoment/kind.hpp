#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spinmoment {

enum class Sign : std::int8_t { Plus = 1, Minus = -1 };
using SignVector = std::vector<Sign>;

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
/// "+-+" style rendering.
std::string to_string(const SignVector& signs);

/// What replaces |<J^+-_k>|^2 at a site assumed to hold a local quantum state.
enum class Bound {
  CJ,  ///< Jx^2 + Jy^2 - C_J
  HZ,  ///< J^l J^-l, i.e. Jx^2 + Jy^2 + l Jz
};

/// Which local model the moment inequality tests: Bell (no quantum sites),
/// steering with T quantum sites, or entanglement (all N sites quantum).
struct CriterionKind {
  enum class Type { Bell, EntanglementHZ, EntanglementCJ, Steering };

  Type type = Type::Bell;
  int t_sites = 0;
  Bound bound = Bound::CJ;

  static CriterionKind bell() { return {Type::Bell, 0, Bound::CJ}; }
  static CriterionKind ent_hz() { return {Type::EntanglementHZ, 0, Bound::HZ}; }
  static CriterionKind ent_cj() { return {Type::EntanglementCJ, 0, Bound::CJ}; }
  static CriterionKind steering(int t, Bound b = Bound::CJ) { return {Type::Steering, t, b}; }
  /// Bell for T = 0, steering for 0 < T < N, entanglement for T = N.
  static CriterionKind with_quantum_sites(int t, int n_sites, Bound b = Bound::CJ);

  /// Number of quantum sites T for an N-site state.
  int quantum_sites(int n_sites) const;
  Bound bound_kind() const;
  /// Throws InvalidArgument unless 1 <= T <= N for steering.
  void validate(int n_sites) const;
  /// Steering with T = N becomes the matching entanglement kind.
  CriterionKind normalized(int n_sites) const;

  /// bell, ent-hz, ent-cj, epr<T>, epr-hz<T>
  std::string token() const;
  static CriterionKind parse(std::string_view token);

  friend bool operator==(const CriterionKind&, const CriterionKind&) = default;
};

/// All-minus left-side signs.
SignVector canonical_s(int n_sites);
/// + on the first quantum site, - on the rest.
SignVector canonical_l(int t_sites);

}  // namespace spinmoment
