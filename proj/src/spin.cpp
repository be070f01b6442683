#include "spinmoment/spin.hpp"

#include <array>
#include <charconv>
#include <map>
#include <mutex>
#include <random>

#include "spinmoment/detail/parallel.hpp"
#include "spinmoment/nelder_mead.hpp"

namespace spinmoment {

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Indexed by twice_j - 1.
constexpr std::array<double, 8> kTableCj = {0.25, 0.4375, 0.6009, 0.7496,
                                            0.8877, 1.0178, 1.1416, 1.26};

}  // namespace

SpinQuantum SpinQuantum::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    const int j = parse_int(text);
    if (j < 0) throw InvalidArgument("spin must be non-negative");
    return SpinQuantum(2 * j);
  }
  const int num = parse_int(text.substr(0, slash));
  const int den = parse_int(text.substr(slash + 1));
  if (num < 0) throw InvalidArgument("spin must be non-negative");
  if (den == 1) return SpinQuantum(2 * num);
  if (den == 2) return SpinQuantum(num);
  throw InvalidArgument("spin must be an integer or half-integer: '" + std::string(text) + "'");
}

std::string SpinQuantum::to_string() const {
  if (twice_j_ % 2 == 0) return std::to_string(twice_j_ / 2);
  return std::to_string(twice_j_) + "/2";
}

std::optional<double> tabulated_cj(SpinQuantum j) {
  const int tj = j.twice_j();
  if (tj < 1 || tj > static_cast<int>(kTableCj.size())) return std::nullopt;
  return kTableCj[tj - 1];
}

UncertaintyBound cj_bound(SpinQuantum j) {
  if (j.twice_j() < 1) throw InvalidArgument("C_J needs J >= 1/2");
  if (auto v = tabulated_cj(j)) return {j, *v, BoundSource::Tabulated};

  static std::mutex mutex;
  static std::map<int, UncertaintyBound> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(j.twice_j()); it != memo.end()) return it->second;
  }
  auto computed = compute_cj(j);
  std::lock_guard lock(mutex);
  memo.emplace(j.twice_j(), computed);
  return computed;
}

double transverse_variance(const SpinMatrices<double>& s, const Eigen::VectorXcd& psi) {
  const double norm_sq = psi.squaredNorm();
  const Eigen::VectorXcd x = s.jx * psi;
  const Eigen::VectorXcd y = s.jy * psi;
  // <Jx^2> = |Jx psi|^2 since Jx is Hermitian.
  const double ex = psi.dot(x).real() / norm_sq;
  const double ey = psi.dot(y).real() / norm_sq;
  const double exx = x.squaredNorm() / norm_sq;
  const double eyy = y.squaredNorm() / norm_sq;
  return (exx - ex * ex) + (eyy - ey * ey);
}

namespace {

NelderMeadResult<double> minimize_variance(const SpinMatrices<double>& s,
                                           const Eigen::VectorXd& start, double tol) {
  const Eigen::Index d = s.j.dim();
  auto objective = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXcd psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = {p(i), p(d + i)};
    if (psi.squaredNorm() == 0.0) return std::numeric_limits<double>::infinity();
    return transverse_variance(s, psi);
  };
  NelderMeadOptions<double> opt;
  opt.f_tol = tol;
  opt.x_tol = 1e-8;
  opt.max_iterations = 4000 * static_cast<int>(2 * d);
  opt.adaptive = 2 * d > 4;
  opt.reinitializations = 6;
  // Normalize so the simplex scale is comparable across restarts.
  return nelder_mead<double>(objective, Eigen::VectorXd(start / start.norm()), opt);
}

Eigen::VectorXd split_complex(const Eigen::VectorXcd& v) {
  Eigen::VectorXd p(2 * v.size());
  p << v.real(), v.imag();
  return p;
}

}  // namespace

double cj_local_minimum(SpinQuantum j, const Eigen::VectorXcd& start, double tol) {
  if (j.twice_j() < 1) throw InvalidArgument("C_J needs J >= 1/2");
  if (start.size() != j.dim()) throw InvalidArgument("start vector has wrong dimension");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  return minimize_variance(build_spin_matrices(j), split_complex(start), tol).value;
}

UncertaintyBound compute_cj(SpinQuantum j, int restarts, double tol, std::uint64_t seed) {
  if (j.twice_j() < 1) throw InvalidArgument("C_J needs J >= 1/2");
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");

  const auto s = build_spin_matrices(j);
  const int d = j.dim();
  auto runs = detail::parallel_map(static_cast<std::size_t>(restarts), [&](std::size_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd start(2 * d);
    for (auto& c : start) c = u(rng);
    return minimize_variance(s, start, tol);
  });

  double best = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (const auto& r : runs) {
    // Ties keep the lowest restart index.
    if (r.value < best) best = r.value;
    any_converged = any_converged || r.converged;
  }
  if (!any_converged) {
    throw ConvergenceError("C_J minimization did not converge for J=" + j.to_string(), best);
  }
  return {j, best, BoundSource::Computed};
}

}  // namespace spinmoment
