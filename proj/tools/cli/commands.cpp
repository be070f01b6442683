#include "cli/commands.hpp"

#include <cmath>
#include <fstream>

#include "spinmoment/criteria.hpp"
#include "spinmoment/errors.hpp"
#include "spinmoment/optimizer.hpp"
#include "spinmoment/oracle.hpp"

namespace spinmoment::cli {

namespace {

using std::int64_t;

OptimizerOptions optimizer_options(const RunConfig& config) {
  OptimizerOptions opt;
  opt.restarts = config.restarts;
  opt.seed = config.seed;
  opt.symmetric = !config.asymmetric;
  return opt;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "canonical") return Strategy::Canonical;
  if (s == "exhaustive") return Strategy::Exhaustive;
  throw InvalidArgument("unknown strategy '" + s + "' (expected canonical or exhaustive)");
}

std::vector<int> d_values(const RunConfig& config) {
  if (config.d.lo < 2) throw InvalidArgument("d must be >= 2");
  return config.d.values();
}

void check_n(const IntRange& n) {
  if (n.lo < 2) throw InvalidArgument("N must be >= 2");
}

struct VerifyFamily {
  StateFamily family;
  int only_twice_j;  // 0 for any
};

}  // namespace

double relative_discrepancy(double a, double b) {
  if (a == b || (std::isnan(a) && std::isnan(b))) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

Table cmd_eval(const RunConfig& config) {
  check_n(config.n);
  const SpinQuantum j(config.twice_j);
  const auto family = config.resolved_family();
  const auto kinds = config.resolved_kinds();
  const Strategy strategy = parse_strategy(config.strategy);
  CriteriaOptions opts;
  opts.cap = config.cap;

  Table table;
  table.columns = {"twice_j", "n", "t", "family", "kind", "L", "R", "B", "violated", "s", "l", "backend"};
  for (int n : config.n.values()) {
    const auto state = make_state(family, j, n);
    for (const auto& kind : kinds) {
      const auto res = evaluate(state, kind, strategy, opts);
      table.add_row({int64_t{config.twice_j}, int64_t{n}, int64_t{res.kind.quantum_sites(n)},
                     family_name(family), res.kind.token(), res.lhs, res.rhs, res.b, res.violated,
                     to_string(res.signs.s), to_string(res.signs.l),
                     std::string(res.backend == Backend::Oracle ? "oracle" : "analytic")});
    }
  }
  return table;
}

Table cmd_verify(const RunConfig& config, VerifySummary& summary) {
  const std::vector<VerifyFamily> families = {
      {UniformMax{}, 0},           {Bosonic{}, 0},          {GeneralizedGhz{0.3}, 1},
      {GeneralizedGhz{0.7853981633974483}, 1}, {SpinOneR{0.7}, 2},
  };
  const std::vector<CriterionKind> kinds = {CriterionKind::bell(), CriterionKind::ent_hz(),
                                            CriterionKind::ent_cj(), CriterionKind::steering(1)};
  Table table;
  table.columns = {"twice_j", "n", "family", "kind", "b_oracle", "b_analytic", "rel_discrepancy"};
  summary = {};

  for (int tj = 1; tj <= config.max_twice_j; ++tj) {
    const SpinQuantum j(tj);
    const double c_j = cj_bound(j).c_j;
    CriteriaOptions analytic_opts;
    analytic_opts.c_j = c_j + config.corrupt_cj;
    for (int n = 2;; ++n) {
      const auto size = hilbert_dimension(j.dim(), n);
      if (!size || *size > config.cap) break;
      for (const auto& vf : families) {
        if (vf.only_twice_j && vf.only_twice_j != tj) continue;
        const auto state = make_state(vf.family, j, n);
        const MomentOracle oracle(state, {config.cap, 1.0, c_j});
        for (const auto& kind : kinds) {
          const auto normalized = kind.normalized(n);
          const int t = normalized.quantum_sites(n);
          const bool uses_l = normalized.bound_kind() == Bound::HZ && t > 0;
          const auto o = evaluate_oracle(oracle, kind, {canonical_s(n), uses_l ? canonical_l(t) : SignVector{}});
          const auto a = evaluate_analytic(state, kind, analytic_opts);
          const double rel = relative_discrepancy(o.b, a.b);
          summary.points += 1;
          summary.max_discrepancy = std::max(summary.max_discrepancy, rel);
          table.add_row({int64_t{tj}, int64_t{n}, family_name(vf.family), normalized.token(), o.b, a.b, rel});
        }
      }
    }
  }
  return table;
}

Table cmd_scan(const RunConfig& config) {
  check_n(config.n);
  ScanRequest req;
  req.kinds = config.resolved_kinds();
  req.n_values = config.n.values();
  if (config.axis == "n") {
    req.axis = ScanAxis::VaryN;
    req.twice_js = {config.twice_j};
  } else if (config.axis == "d") {
    req.axis = ScanAxis::VaryD;
    for (int d : d_values(config)) req.twice_js.push_back(d - 1);
  } else {
    throw InvalidArgument("unknown axis '" + config.axis + "' (expected n or d)");
  }
  if (config.optimized_source()) {
    req.source = Optimized{};
  } else {
    req.source = config.resolved_family();
  }
  req.optimizer = optimizer_options(config);
  req.criteria.cap = config.cap;

  Table table;
  table.columns = {"twice_j", "n", "t", "family", "kind", "L", "R", "B", "violated", "r_vector"};
  for (auto& row : scan_curve(req)) {
    table.add_row({int64_t{row.twice_j}, int64_t{row.n}, int64_t{row.t}, row.family, row.kind.token(),
                   row.lhs, row.rhs, row.b, row.violated, std::move(row.r)});
  }
  return table;
}

Table cmd_min_sites(const RunConfig& config) {
  if (config.n_max < 2) throw InvalidArgument("--n-max must be >= 2");
  const auto kinds = config.resolved_kinds();
  const auto opt = optimizer_options(config);
  Table table;
  table.columns = {"d", "kind", "min_n", "b_at_min_n", "b_before", "n_max_searched"};
  for (int d : d_values(config)) {
    for (const auto& kind : kinds) {
      const auto res = min_sites_for_violation(SpinQuantum(d - 1), kind, config.n_max, opt);
      std::optional<int64_t> min_n;
      if (res.min_n) min_n = *res.min_n;
      table.add_row({int64_t{d}, kind.token(), min_n, res.b_at_min_n, res.b_before,
                     int64_t{res.n_max_searched}});
    }
  }
  return table;
}

Table cmd_cj_table(const RunConfig& config) {
  if (config.max_twice_j < 1) throw InvalidArgument("--max-twice-j must be >= 1");
  Table table;
  table.columns = {"twice_j", "j", "c_j", "source"};
  for (int tj = 1; tj <= config.max_twice_j; ++tj) {
    const SpinQuantum j(tj);
    const auto bound = config.compute ? compute_cj(j, 50, 1e-9, config.seed) : cj_bound(j);
    table.add_row({int64_t{tj}, j.to_string(), bound.c_j,
                   std::string(bound.source == BoundSource::Tabulated ? "tabulated" : "computed")});
  }
  return table;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Table table;
  int code = kExitOk;
  try {
    switch (config.command) {
      case Command::Eval:
        table = cmd_eval(config);
        break;
      case Command::Verify: {
        VerifySummary summary;
        table = cmd_verify(config, summary);
        if (summary.points == 0) {
          err << "warning: verification grid is empty (no (J, N) with d^N <= " << config.cap << ")\n";
          return kExitUsage;
        }
        err << "verify: " << summary.points << " points, max relative discrepancy "
            << format_number(summary.max_discrepancy) << "\n";
        if (!(summary.max_discrepancy <= kVerifyTolerance)) {
          err << "verify: FAILED (tolerance " << format_number(kVerifyTolerance) << ")\n";
          code = kExitVerifyFailed;
        }
        break;
      }
      case Command::Scan:
        table = cmd_scan(config);
        break;
      case Command::MinSites:
        table = cmd_min_sites(config);
        break;
      case Command::CjTable:
        table = cmd_cj_table(config);
        break;
    }
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text =
      config.format == Format::Csv ? render_csv(table) : render_json(table, config.to_json());
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write " << config.output << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace spinmoment::cli
