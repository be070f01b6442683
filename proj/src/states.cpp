#include "spinmoment/states.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <limits>

#include "spinmoment/errors.hpp"

namespace spinmoment {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Exact for k <= 170 as long as the product stays a representable integer.
double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double log_sum_sq(const Eigen::VectorXd& log_abs) {
  double peak = kNegInf;
  for (double l : log_abs) peak = std::max(peak, l);
  if (peak == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double l : log_abs) acc += std::exp(2.0 * (l - peak));
  return 2.0 * peak + std::log(acc);
}

void check_sites(int n_sites) {
  if (n_sites < 2) throw InvalidArgument("need at least 2 sites");
}

}  // namespace

std::string family_name(const StateFamily& family) {
  struct {
    std::string operator()(const UniformMax&) const { return "uniform-max"; }
    std::string operator()(const Bosonic&) const { return "bosonic"; }
    std::string operator()(const GeneralizedGhz&) const { return "ghz"; }
    std::string operator()(const SpinOneR&) const { return "spin1r"; }
    std::string operator()(const Custom&) const { return "custom"; }
  } visitor;
  return std::visit(visitor, family);
}

SymmetricCorrelatedState SymmetricCorrelatedState::from_amplitudes(SpinQuantum j, int n_sites,
                                                                   Eigen::VectorXd r) {
  check_sites(n_sites);
  if (j.twice_j() < 1) throw InvalidArgument("states need J >= 1/2");
  if (r.size() != j.dim()) {
    throw InvalidArgument("amplitude vector has length " + std::to_string(r.size()) +
                          ", expected " + std::to_string(j.dim()));
  }
  if (!r.allFinite()) throw InvalidArgument("amplitudes must be finite");
  if (r.isZero(0.0)) throw InvalidArgument("amplitude vector is all zero");

  SymmetricCorrelatedState s;
  s.j = j;
  s.n_sites = n_sites;
  s.log_amplitudes.resize(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    s.log_amplitudes(i) = r(i) == 0.0 ? kNegInf : std::log(std::abs(r(i)));
  }
  s.amplitudes = std::move(r);
  s.norm_sq = s.amplitudes.squaredNorm();
  s.log_norm_sq = std::isfinite(s.norm_sq) && s.norm_sq > 0 ? std::log(s.norm_sq)
                                                             : log_sum_sq(s.log_amplitudes);
  return s;
}

SymmetricCorrelatedState SymmetricCorrelatedState::from_log_amplitudes(SpinQuantum j, int n_sites,
                                                                       Eigen::VectorXd log_abs,
                                                                       const Eigen::VectorXd& signs) {
  check_sites(n_sites);
  if (j.twice_j() < 1) throw InvalidArgument("states need J >= 1/2");
  if (log_abs.size() != j.dim() || signs.size() != j.dim()) {
    throw InvalidArgument("log amplitude vector has wrong length");
  }
  SymmetricCorrelatedState s;
  s.j = j;
  s.n_sites = n_sites;
  s.amplitudes.resize(log_abs.size());
  bool any = false;
  for (Eigen::Index i = 0; i < log_abs.size(); ++i) {
    if (std::isnan(log_abs(i)) || log_abs(i) == std::numeric_limits<double>::infinity()) {
      throw InvalidArgument("log amplitudes must be finite or -inf");
    }
    if (signs(i) == 0.0 || log_abs(i) == kNegInf) {
      log_abs(i) = kNegInf;
      s.amplitudes(i) = 0.0;
    } else {
      s.amplitudes(i) = std::copysign(std::exp(log_abs(i)), signs(i));
      any = true;
    }
  }
  if (!any) throw InvalidArgument("amplitude vector is all zero");
  s.log_amplitudes = std::move(log_abs);
  s.log_norm_sq = log_sum_sq(s.log_amplitudes);
  s.norm_sq = std::exp(s.log_norm_sq);
  return s;
}

bool SymmetricCorrelatedState::is_symmetric() const {
  const Eigen::Index d = amplitudes.size();
  for (Eigen::Index i = 0; i < d / 2; ++i) {
    if (amplitudes(i) != amplitudes(d - 1 - i) || log_amplitudes(i) != log_amplitudes(d - 1 - i)) {
      return false;
    }
  }
  return true;
}

int SymmetricCorrelatedState::sign(Eigen::Index i) const {
  return amplitudes(i) > 0 ? 1 : (amplitudes(i) < 0 ? -1 : 0);
}

Eigen::VectorXd SymmetricCorrelatedState::normalized_amplitudes() const {
  Eigen::VectorXd out(amplitudes.size());
  const double top = log_amplitudes.maxCoeff();
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = sign(i) * std::exp(log_amplitudes(i) - top);
  return out / out.norm();
}

SymmetricCorrelatedState make_state(const StateFamily& family, SpinQuantum j, int n_sites) {
  check_sites(n_sites);
  if (j.twice_j() < 1) throw InvalidArgument("states need J >= 1/2");
  const int d = j.dim();
  const int tj = j.twice_j();

  if (std::holds_alternative<UniformMax>(family)) {
    return SymmetricCorrelatedState::from_amplitudes(j, n_sites, Eigen::VectorXd::Ones(d));
  }
  if (std::holds_alternative<Bosonic>(family)) {
    const double power = 0.5 * (n_sites - 2);
    Eigen::VectorXd log_r(d);
    Eigen::VectorXd r(d);
    bool representable = tj <= 170;
    for (int i = 0; i < d; ++i) {
      // J - m = 2J - i and J + m = i for m = i - J.
      log_r(i) = power * (log_factorial(tj - i) + log_factorial(i));
      if (representable) {
        r(i) = std::pow(factorial(tj - i) * factorial(i), power);
        representable = std::isfinite(r(i));
      }
    }
    if (representable && std::isfinite(r.squaredNorm())) {
      return SymmetricCorrelatedState::from_amplitudes(j, n_sites, std::move(r));
    }
    return SymmetricCorrelatedState::from_log_amplitudes(j, n_sites, std::move(log_r),
                                                         Eigen::VectorXd::Ones(d));
  }
  if (const auto* ghz = std::get_if<GeneralizedGhz>(&family)) {
    if (tj != 1) throw InvalidArgument("generalized GHZ family requires J = 1/2");
    if (!std::isfinite(ghz->theta)) throw InvalidArgument("theta must be finite");
    Eigen::VectorXd r(2);
    r << std::cos(ghz->theta), std::sin(ghz->theta);
    // cos(pi/2) evaluates to ~6e-17; such residues are exact zeros.
    const double eps = std::numeric_limits<double>::epsilon();
    for (auto& c : r) {
      if (std::abs(c) < eps) c = 0.0;
    }
    return SymmetricCorrelatedState::from_amplitudes(j, n_sites, std::move(r));
  }
  if (const auto* s1 = std::get_if<SpinOneR>(&family)) {
    if (tj != 2) throw InvalidArgument("spin-1 r family requires J = 1");
    if (!(s1->r >= 0.0) || !std::isfinite(s1->r)) {
      throw InvalidArgument("spin-1 r must be finite and non-negative");
    }
    Eigen::VectorXd r(3);
    r << 1.0, s1->r, 1.0;
    return SymmetricCorrelatedState::from_amplitudes(j, n_sites, std::move(r));
  }
  return SymmetricCorrelatedState::from_amplitudes(j, n_sites, std::get<Custom>(family).r);
}

std::optional<std::size_t> hilbert_dimension(int dim, int n_sites) {
  std::size_t total = 1;
  for (int k = 0; k < n_sites; ++k) {
    if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim)) {
      return std::nullopt;
    }
    total *= static_cast<std::size_t>(dim);
  }
  return total;
}

Eigen::VectorXcd dense_vector(const SymmetricCorrelatedState& state, std::size_t cap) {
  const int d = state.dim();
  const auto size = hilbert_dimension(d, state.n_sites);
  if (!size || *size > cap) throw CapacityError(d, state.n_sites, cap);

  // All digits equal to a: index a * (d^N - 1) / (d - 1).
  const std::size_t stride = (*size - 1) / static_cast<std::size_t>(d - 1);
  const Eigen::VectorXd amp = state.normalized_amplitudes();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(*size));
  for (int a = 0; a < d; ++a) {
    psi(static_cast<Eigen::Index>(a * stride)) = amp(a);
  }
  return psi;
}

Eigen::VectorXd parse_amplitudes(std::string_view text) {
  std::vector<double> values;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InvalidArgument("empty amplitude list");
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed JSON amplitude array: ") + e.what());
    }
    if (!j.is_array()) throw InvalidArgument("amplitudes must be a JSON array");
    for (const auto& v : j) {
      if (!v.is_number()) throw InvalidArgument("amplitude entries must be numbers");
      values.push_back(v.get<double>());
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      auto token = text.substr(pos, comma - pos);
      const auto b = token.find_first_not_of(" \t");
      const auto e = token.find_last_not_of(" \t");
      if (b == std::string_view::npos) throw InvalidArgument("empty amplitude entry");
      token = token.substr(b, e - b + 1);
      double v = 0.0;
      auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || p != token.data() + token.size()) {
        throw InvalidArgument("not a decimal number: '" + std::string(token) + "'");
      }
      values.push_back(v);
      pos = comma + 1;
    }
  }
  if (values.empty()) throw InvalidArgument("empty amplitude list");
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InvalidArgument("amplitudes must be finite");
    out(static_cast<Eigen::Index>(i)) = values[i];
  }
  return out;
}

}  // namespace spinmoment
