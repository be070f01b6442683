#include "spinmoment/kind.hpp"

#include <charconv>

#include "spinmoment/errors.hpp"

namespace spinmoment {

std::string to_string(const SignVector& signs) {
  std::string out;
  out.reserve(signs.size());
  for (Sign s : signs) out.push_back(s == Sign::Plus ? '+' : '-');
  return out;
}

CriterionKind CriterionKind::with_quantum_sites(int t, int n_sites, Bound b) {
  if (t < 0 || t > n_sites) throw InvalidArgument("quantum site count out of range");
  if (t == 0) return bell();
  return steering(t, b).normalized(n_sites);
}

int CriterionKind::quantum_sites(int n_sites) const {
  switch (type) {
    case Type::Bell: return 0;
    case Type::EntanglementHZ:
    case Type::EntanglementCJ: return n_sites;
    case Type::Steering: return t_sites;
  }
  return 0;
}

Bound CriterionKind::bound_kind() const {
  switch (type) {
    case Type::EntanglementHZ: return Bound::HZ;
    case Type::EntanglementCJ: return Bound::CJ;
    default: return bound;
  }
}

void CriterionKind::validate(int n_sites) const {
  if (type == Type::Steering && (t_sites < 1 || t_sites > n_sites)) {
    throw InvalidArgument("steering needs 1 <= T <= N (got T=" + std::to_string(t_sites) +
                          ", N=" + std::to_string(n_sites) + ")");
  }
}

CriterionKind CriterionKind::normalized(int n_sites) const {
  validate(n_sites);
  if (type == Type::Steering && t_sites == n_sites) {
    return bound == Bound::HZ ? ent_hz() : ent_cj();
  }
  return *this;
}

std::string CriterionKind::token() const {
  switch (type) {
    case Type::Bell: return "bell";
    case Type::EntanglementHZ: return "ent-hz";
    case Type::EntanglementCJ: return "ent-cj";
    case Type::Steering:
      return (bound == Bound::HZ ? "epr-hz" : "epr") + std::to_string(t_sites);
  }
  return "?";
}

CriterionKind CriterionKind::parse(std::string_view token) {
  if (token == "bell") return bell();
  if (token == "ent-hz") return ent_hz();
  if (token == "ent-cj") return ent_cj();
  auto steering_with = [&](std::string_view prefix, Bound b) -> CriterionKind {
    auto digits = token.substr(prefix.size());
    int t = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
    if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size() || t < 1) {
      throw InvalidArgument("bad steering kind '" + std::string(token) + "'");
    }
    return steering(t, b);
  };
  if (token.starts_with("epr-hz")) return steering_with("epr-hz", Bound::HZ);
  if (token.starts_with("epr")) return steering_with("epr", Bound::CJ);
  throw InvalidArgument("unknown criterion kind '" + std::string(token) +
                        "' (expected bell, ent-hz, ent-cj, epr<T>, epr-hz<T>)");
}

SignVector canonical_s(int n_sites) { return SignVector(static_cast<std::size_t>(n_sites), Sign::Minus); }

SignVector canonical_l(int t_sites) {
  SignVector l(static_cast<std::size_t>(t_sites), Sign::Minus);
  if (t_sites > 0) l.front() = Sign::Plus;
  return l;
}

}  // namespace spinmoment
