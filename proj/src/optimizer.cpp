#include "spinmoment/optimizer.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "spinmoment/analytic.hpp"
#include "spinmoment/detail/parallel.hpp"
#include "spinmoment/errors.hpp"
#include "spinmoment/nelder_mead.hpp"

namespace spinmoment {

namespace {

bool needs_cj(CriterionKind kind, int n_sites) {
  return kind.bound_kind() == Bound::CJ && kind.quantum_sites(n_sites) > 0;
}

// log B for non-negative r; NaN when L = R = 0 or r = 0.
struct LogObjective {
  ClosedFormInput in;
  CriterionKind kind;

  double log_b(const Eigen::VectorXd& r) {
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const double a = std::abs(r(i));
      in.log_amplitudes(i) = a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
      in.signs(i) = a > 0.0 ? 1.0 : 0.0;
    }
    if ((in.signs.array() == 0.0).all()) return std::numeric_limits<double>::quiet_NaN();
    const Moments m = analytic_moments(in, kind);
    if (m.rhs.is_zero()) {
      return m.lhs.is_zero() ? std::numeric_limits<double>::quiet_NaN()
                             : std::numeric_limits<double>::infinity();
    }
    if (m.lhs.is_zero()) return -std::numeric_limits<double>::infinity();
    return 0.5 * (m.lhs.log_abs - m.rhs.log_abs);
  }
};

LogObjective make_objective(SpinQuantum j, int n_sites, CriterionKind kind, std::optional<double> c_j) {
  LogObjective obj;
  obj.kind = kind;
  obj.in.j = j;
  obj.in.n_sites = n_sites;
  obj.in.log_amplitudes = Eigen::VectorXd::Zero(j.dim());
  obj.in.signs = Eigen::VectorXd::Ones(j.dim());
  obj.in.c_j = needs_cj(kind, n_sites) ? (c_j ? *c_j : cj_bound(j).c_j) : 0.0;
  obj.in.t_sites = kind.quantum_sites(n_sites);
  obj.in.validate();
  return obj;
}

int parameter_count(int dim, bool symmetric) { return symmetric ? (dim + 1) / 2 : dim; }

Eigen::VectorXd unfold(const Eigen::VectorXd& x, int dim, bool symmetric) {
  Eigen::VectorXd r(dim);
  for (int i = 0; i < dim; ++i) r(i) = std::abs(x(symmetric ? std::min(i, dim - 1 - i) : i));
  const double norm = r.norm();
  if (norm > 0.0) r /= norm;
  return r;
}

Eigen::VectorXd fold(const Eigen::VectorXd& r, bool symmetric) {
  const int dim = static_cast<int>(r.size());
  const int p = parameter_count(dim, symmetric);
  Eigen::VectorXd x(p);
  for (int i = 0; i < p; ++i) x(i) = r(i);
  return x / x.norm();
}

Eigen::VectorXd bosonic_start(SpinQuantum j, int n_sites) {
  const auto state = make_state(Bosonic{}, j, n_sites);
  const double top = state.log_amplitudes.maxCoeff();
  return (state.log_amplitudes.array() - top).exp().matrix();
}

Eigen::VectorXd random_start(int p, std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 gen(seq);
  std::exponential_distribution<double> expo(1.0);
  // Uniform point w on the simplex; r = sqrt(w) has unit norm.
  Eigen::VectorXd w(p);
  for (int i = 0; i < p; ++i) w(i) = expo(gen);
  return (w / w.sum()).cwiseSqrt();
}

}  // namespace

double amplitude_b(SpinQuantum j, int n_sites, CriterionKind kind, const Eigen::VectorXd& r,
                   std::optional<double> c_j) {
  if (r.size() != j.dim()) throw InvalidArgument("amplitude vector must have length 2J+1");
  if ((r.array() < 0.0).any()) throw InvalidArgument("amplitudes must be non-negative");
  kind = kind.normalized(n_sites);
  kind.validate(n_sites);
  auto obj = make_objective(j, n_sites, kind, c_j);
  const double lb = obj.log_b(r);
  return std::exp(lb);
}

OptimizationReport optimize_amplitudes(SpinQuantum j, int n_sites, CriterionKind kind,
                                       const OptimizerOptions& options) {
  if (options.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (j.twice_j() < 1) throw InvalidArgument("need J >= 1/2");
  if (n_sites < 2) throw InvalidArgument("need N >= 2");
  kind = kind.normalized(n_sites);
  kind.validate(n_sites);

  const int dim = j.dim();
  const bool symmetric = options.symmetric;
  const int p = parameter_count(dim, symmetric);
  const auto base = make_objective(j, n_sites, kind, options.c_j);

  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Constant(p, 1.0 / std::sqrt(double(p))));
  starts.push_back(fold(bosonic_start(j, n_sites), symmetric));
  for (int k = 0; k < options.restarts; ++k) starts.push_back(random_start(p, options.seed, k));

  NelderMeadOptions<double> nm;
  nm.f_tol = options.tol;
  nm.x_tol = 1e-8;
  nm.max_iterations = options.max_iterations;
  nm.adaptive = p > 4;

  struct Run {
    Eigen::VectorXd r;
    double log_b = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
  };
  const auto runs = detail::parallel_map(starts.size(), [&](std::size_t k) {
    LogObjective obj = base;
    auto f = [&](const Eigen::VectorXd& x) { return -obj.log_b(unfold(x, dim, symmetric)); };
    const auto res = nelder_mead(f, starts[k], nm);
    Run run;
    run.r = unfold(res.x, dim, symmetric);
    run.log_b = obj.log_b(run.r);
    run.converged = res.converged;
    return run;
  });

  OptimizationReport report;
  report.restarts_run = static_cast<int>(runs.size());
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    report.trace.push_back({static_cast<int>(k), std::exp(runs[k].log_b), runs[k].converged});
    if (std::isnan(runs[k].log_b)) continue;
    if (!best || runs[k].log_b > runs[*best].log_b) best = k;
  }
  if (!best) {
    throw ConvergenceError("no restart produced a defined B for J=" + j.to_string() +
                               ", N=" + std::to_string(n_sites) + ", kind " + kind.token(),
                           std::numeric_limits<double>::quiet_NaN());
  }
  report.best_r = runs[*best].r;
  report.best_b = std::exp(runs[*best].log_b);
  report.converged = runs[*best].converged;
  return report;
}

MinSitesResult min_sites_for_violation(SpinQuantum j, CriterionKind kind, int n_max,
                                       const OptimizerOptions& options, double margin) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  MinSitesResult out;
  out.d = j.dim();
  out.kind = kind;
  out.n_max_searched = n_max;
  double previous = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    if (kind.type == CriterionKind::Type::Steering && kind.t_sites > n) continue;
    const auto report = optimize_amplitudes(j, n, kind, options);
    if (report.best_b > 1.0 + margin) {
      out.min_n = n;
      out.b_at_min_n = report.best_b;
      out.b_before = previous;
      out.best_r = report.best_r;
      return out;
    }
    previous = report.best_b;
    out.b_at_min_n = report.best_b;
    out.best_r = report.best_r;
  }
  out.b_before = previous;
  return out;
}

std::vector<ScanRow> scan_curve(const ScanRequest& request) {
  if (request.kinds.empty()) throw InvalidArgument("scan needs at least one kind");
  if (request.twice_js.empty() || request.n_values.empty()) throw InvalidArgument("scan range is empty");

  std::vector<std::pair<int, int>> points;  // (twice_j, n)
  if (request.axis == ScanAxis::VaryN) {
    for (int tj : request.twice_js)
      for (int n : request.n_values) points.emplace_back(tj, n);
  } else {
    for (int n : request.n_values)
      for (int tj : request.twice_js) points.emplace_back(tj, n);
  }

  std::vector<ScanRow> rows;
  for (const auto& [tj, n] : points) {
    const SpinQuantum j(tj);
    for (CriterionKind kind : request.kinds) {
      if (kind.type == CriterionKind::Type::Steering && kind.t_sites > n) continue;
      kind.validate(n);
      ScanRow row;
      row.twice_j = tj;
      row.n = n;
      row.kind = kind.normalized(n);
      row.t = row.kind.quantum_sites(n);

      SymmetricCorrelatedState state;
      if (std::holds_alternative<Optimized>(request.source)) {
        auto opt = request.optimizer;
        if (!opt.c_j) opt.c_j = request.criteria.c_j;
        const auto report = optimize_amplitudes(j, n, kind, opt);
        state = SymmetricCorrelatedState::from_amplitudes(j, n, report.best_r);
        row.family = "optimized";
      } else {
        const auto& family = std::get<StateFamily>(request.source);
        state = make_state(family, j, n);
        row.family = family_name(family);
      }
      const auto res = evaluate(state, kind, Strategy::Canonical, request.criteria);
      row.lhs = res.lhs;
      row.rhs = res.rhs;
      row.b = res.b;
      row.violated = res.violated;
      row.r = state.normalized_amplitudes();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace spinmoment
