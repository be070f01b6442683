// Acceptance checks: one PASS/FAIL line per criterion. `--only k` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "spinmoment/analytic.hpp"
#include "spinmoment/criteria.hpp"
#include "spinmoment/optimizer.hpp"
#include "spinmoment/oracle.hpp"
#include "support/grid_oracle.hpp"

using namespace spinmoment;

namespace {

constexpr double kPi4 = std::numbers::pi / 4;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ClosedFormInput input(const StateFamily& f, int tj, int n, int t = 0) {
  return ClosedFormInput::from_state(make_state(f, SpinQuantum(tj), n), t);
}

// 1
Outcome ghz_scaling() {
  constexpr double kTol = 1e-12;
  Outcome o;
  double worst = 0.0;
  int first_violation = 0;
  for (int n = 2; n <= 10; ++n) {
    const auto in = input(Bosonic{}, 1, n, 1);
    worst = std::max(worst, rel(b_ent_cj(in), std::pow(2.0, n - 1)));
    worst = std::max(worst, rel(b_steer_t(in), std::pow(2.0, (n - 1) / 2.0)));
    worst = std::max(worst, rel(b_bell(in), std::pow(2.0, (n - 2) / 2.0)));
    const auto m = analytic_moments(in, CriterionKind::bell());
    if (!first_violation && m.violated()) first_violation = n;
  }
  o.pass = worst <= kTol && first_violation == 3;
  o.detail = "max rel error " + fmt(worst) + ", first Bell violation at N=" + std::to_string(first_violation);
  return o;
}

// 2
Outcome oracle_equivalence() {
  constexpr double kTol = 1e-9;
  constexpr std::size_t kCap = 1000000;
  Outcome o;
  std::vector<std::pair<StateFamily, int>> families = {
      {UniformMax{}, 0}, {Bosonic{}, 0}, {GeneralizedGhz{0.3}, 1}, {GeneralizedGhz{kPi4}, 1}, {SpinOneR{0.7}, 2}};
  const std::vector<CriterionKind> kinds = {CriterionKind::bell(), CriterionKind::ent_hz(), CriterionKind::ent_cj(),
                                            CriterionKind::steering(1)};
  double worst = 0.0;
  std::size_t points = 0;
  std::string where;
  for (int tj = 1; tj <= 8; ++tj) {
    for (int n = 2;; ++n) {
      const auto size = hilbert_dimension(tj + 1, n);
      if (!size || *size > kCap) break;
      for (const auto& [family, only] : families) {
        if (only && only != tj) continue;
        const auto state = make_state(family, SpinQuantum(tj), n);
        const MomentOracle oracle(state, {kCap, 1.0, std::nullopt});
        for (auto kind : kinds) {
          const auto k = kind.normalized(n);
          const int t = k.quantum_sites(n);
          const SignVector l = k.bound_kind() == Bound::HZ ? canonical_l(t) : SignVector{};
          const double bo = evaluate_oracle(oracle, k, {canonical_s(n), l}).b;
          const double ba = evaluate_analytic(state, k).b;
          double d = rel(bo, ba);
          if (std::isnan(bo) != std::isnan(ba)) d = INFINITY;
          if (std::isnan(bo) && std::isnan(ba)) d = 0.0;
          ++points;
          if (d > worst) {
            worst = d;
            where = family_name(family) + " 2J=" + std::to_string(tj) + " N=" + std::to_string(n) + " " + k.token();
          }
        }
      }
    }
  }
  o.pass = worst <= kTol;
  o.detail = std::to_string(points) + " points, max rel discrepancy " + fmt(worst) + (where.empty() ? "" : " at " + where);
  return o;
}

// 3
Outcome spin1_bosonic() {
  constexpr double kTol = 1e-10;
  Outcome o;
  std::ostringstream d;
  const double b2 = b_bell(input(Bosonic{}, 2, 2));
  const double b3 = b_bell(input(Bosonic{}, 2, 3));
  const double b40 = b_bell(input(Bosonic{}, 2, 40));
  const bool v2 = analytic_moments(input(Bosonic{}, 2, 2), CriterionKind::bell()).violated();
  o.pass &= rel(b2, 2 * std::sqrt(2.0) / 3) <= kTol && !v2;
  o.pass &= rel(b3, 4 / std::sqrt(15.0)) <= kTol && b3 > 1.0;
  o.pass &= std::abs(b40 - 2 / std::sqrt(3.0)) < 1e-6;
  double worst = 0.0;
  for (int n = 2; n <= 40; ++n) {
    const double expect = std::pow(2.0, (n + 4) / 2.0) / (std::sqrt(17.0) * std::sqrt(std::pow(2.0, n - 1) + 1));
    worst = std::max(worst, rel(b_steer_t(input(Bosonic{}, 2, n, 1)), expect));
  }
  const double epr2 = b_steer_t(input(Bosonic{}, 2, 2, 1));
  o.pass &= worst <= kTol && epr2 > 1.0;
  d << "B_BELL(2)=" << fmt(b2) << " B_BELL(3)=" << fmt(b3) << " |B_BELL(40)-2/sqrt3|=" << fmt(std::abs(b40 - 2 / std::sqrt(3.0)))
    << " B_EPR max rel err " << fmt(worst) << " B_EPR(2)=" << fmt(epr2);
  o.detail = d.str();
  return o;
}

// 4
Outcome spin1_optimized() {
  Outcome o;
  const auto n3 = optimize_amplitudes(SpinQuantum(2), 3, CriterionKind::bell());
  const auto n30 = optimize_amplitudes(SpinQuantum(2), 30, CriterionKind::bell());
  const auto grid = support::grid_max_1d([](double r) { return support::spin1_bell(r, 3); }, 1e-4, 10.0);
  const double gap = std::abs(n3.best_b - grid.value);
  o.pass = n3.best_b > 1.0 && std::abs(n30.best_b - std::sqrt(2.0)) < 1e-3 && gap < 1e-8;
  o.detail = "N=3 best " + fmt(n3.best_b) + ", N=30 |best-sqrt2|=" + fmt(std::abs(n30.best_b - std::sqrt(2.0))) +
             ", |best - grid| at N=3 " + fmt(gap);
  return o;
}

// 5
Outcome min_sites() {
  Outcome o;
  OptimizerOptions opt;
  opt.restarts = 20;
  opt.seed = kDefaultSeed;
  std::ostringstream d;
  for (auto [dim, expect] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{5, 9}}) {
    const auto r = min_sites_for_violation(SpinQuantum(dim - 1), CriterionKind::bell(), 30, opt);
    const int got = r.min_n.value_or(-1);
    o.pass &= got == expect;
    d << "d=" << dim << ":" << got << " ";
  }
  o.detail = d.str();
  return o;
}

// 6
Outcome cj_table() {
  constexpr double kTol = 1e-3;
  const double table[] = {0.25, 0.4375, 0.6009, 0.7496, 0.8877, 1.0178, 1.1416, 1.26};
  Outcome o;
  double worst = 0.0;
  for (int tj = 1; tj <= 8; ++tj) worst = std::max(worst, std::abs(compute_cj(SpinQuantum(tj)).c_j - table[tj - 1]));
  o.pass = worst <= kTol;
  o.detail = "max |computed - table| " + fmt(worst);
  return o;
}

// 7
Outcome generalized_ghz() {
  Outcome o;
  double worst_l = 0.0;
  bool r_zero = true;
  for (double theta : {0.1, 0.3, kPi4, 1.2}) {
    for (int n = 2; n <= 8; ++n) {
      const auto state = make_state(GeneralizedGhz{theta}, SpinQuantum(1), n);
      const auto m = analytic_moments(ClosedFormInput::from_state(state, 0), CriterionKind::ent_hz());
      const auto e = evaluate(state, CriterionKind::ent_hz(), Strategy::Exhaustive);
      const double l = std::pow(std::cos(theta) * std::sin(theta), 2);
      r_zero &= m.rhs_value() == 0.0 && e.rhs == 0.0;
      worst_l = std::max({worst_l, std::abs(m.lhs_value() - l), std::abs(e.lhs - l)});
    }
  }
  bool flips = true;
  for (int n = 2; n <= 8; ++n) {
    const double s2 = ghz_cj_detection_threshold(n);
    const auto above = make_state(GeneralizedGhz{0.5 * std::asin(s2 + 1e-6)}, SpinQuantum(1), n);
    const auto below = make_state(GeneralizedGhz{0.5 * std::asin(s2 - 1e-6)}, SpinQuantum(1), n);
    flips &= evaluate(above, CriterionKind::ent_cj(), Strategy::Canonical).violated;
    flips &= !evaluate(below, CriterionKind::ent_cj(), Strategy::Canonical).violated;
  }
  o.pass = r_zero && worst_l <= 1e-12 && flips;
  o.detail = std::string("R=0 ") + (r_zero ? "yes" : "no") + ", max |L-(cos sin)^2| " + fmt(worst_l) +
             ", C_J detection flips at threshold " + (flips ? "yes" : "no");
  return o;
}

// 8
Outcome pauli_scaling() {
  constexpr double kTol = 1e-12;
  Outcome o;
  double worst = 0.0;
  std::size_t points = 0;
  for (int tj = 1; tj <= 8; ++tj) {
    for (int n = 2;; ++n) {
      const auto size = hilbert_dimension(tj + 1, n);
      if (!size || *size > 50000) break;
      std::vector<StateFamily> families{UniformMax{}, Bosonic{}};
      if (tj == 1) families.push_back(GeneralizedGhz{0.3});
      if (tj == 2) families.push_back(SpinOneR{0.7});
      for (const auto& f : families) {
        const auto state = make_state(f, SpinQuantum(tj), n);
        const MomentOracle unit(state);
        const MomentOracle pauli(state, {kDefaultCap, 2.0, std::nullopt});
        for (auto kind : {CriterionKind::bell(), CriterionKind::ent_hz(), CriterionKind::ent_cj(),
                          CriterionKind::steering(1), CriterionKind::steering(1, Bound::HZ)}) {
          const auto k = kind.normalized(n);
          const int t = k.quantum_sites(n);
          const SignChoice sc{canonical_s(n), k.bound_kind() == Bound::HZ ? canonical_l(t) : SignVector{}};
          const double a = evaluate_oracle(unit, k, sc).b;
          const double b = evaluate_oracle(pauli, k, sc).b;
          if (std::isnan(a) && std::isnan(b)) continue;
          worst = std::max(worst, rel(a, b));
          ++points;
        }
      }
    }
  }
  o.pass = worst <= kTol;
  o.detail = std::to_string(points) + " points, max rel change " + fmt(worst);
  return o;
}

// 9
Outcome trends() {
  constexpr double kTol = 1e-9;
  Outcome o;
  std::ostringstream d;
  OptimizerOptions opt;

  bool hierarchy = true;
  auto check_hierarchy = [&](SpinQuantum j, int n, const Eigen::VectorXd& r) {
    const auto state = SymmetricCorrelatedState::from_amplitudes(j, n, r);
    const auto list = nested_verdicts(state, n);
    for (int t = 0; t < n; ++t) hierarchy &= list[t + 1].b >= list[t].b * (1 - 1e-12);
  };

  bool monotone_n = true;
  for (int tj = 1; tj <= 6; ++tj) {
    double prev = 0.0;
    for (int n = 2; n <= 20; ++n) {
      const auto rep = optimize_amplitudes(SpinQuantum(tj), n, CriterionKind::bell(), opt);
      check_hierarchy(SpinQuantum(tj), n, rep.best_r);
      if (rep.best_b < prev - kTol) {
        monotone_n = false;
        d << "B_BELL(J=" << SpinQuantum(tj).to_string() << ") drops " << fmt(prev) << "->" << fmt(rep.best_b)
          << " at N=" << n << "; ";
      }
      prev = rep.best_b;
    }
  }

  bool monotone_d = true;
  for (auto kind : {CriterionKind::bell(), CriterionKind::steering(1), CriterionKind::ent_cj()}) {
    double prev = INFINITY;
    for (int dim = 2; dim <= 9; ++dim) {
      const auto rep = optimize_amplitudes(SpinQuantum(dim - 1), 10, kind, opt);
      check_hierarchy(SpinQuantum(dim - 1), 10, rep.best_r);
      if (rep.best_b > prev + kTol) {
        monotone_d = false;
        d << kind.token() << " rises at d=" << dim << "; ";
      }
      prev = rep.best_b;
    }
  }
  o.pass = monotone_n && monotone_d && hierarchy;
  d << "nondecreasing in N: " << (monotone_n ? "yes" : "no") << ", nonincreasing in d: " << (monotone_d ? "yes" : "no")
    << ", hierarchy: " << (hierarchy ? "yes" : "no");
  o.detail = d.str();
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only k]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "spin-1/2 GHZ scaling", ghz_scaling, 1.0},
      {2, "oracle/closed-form equivalence", oracle_equivalence, 120.0},
      {3, "spin-1 bosonic closed forms", spin1_bosonic, 60.0},
      {4, "spin-1 optimized states", spin1_optimized, 60.0},
      {5, "minimum sites", min_sites, 180.0},
      {6, "C_J table", cj_table, 30.0},
      {7, "generalized GHZ", generalized_ghz, 60.0},
      {8, "Pauli scale invariance", pauli_scaling, 60.0},
      {9, "trend properties", trends, 120.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s %d %s: %s [%.2fs, limit %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_seconds, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
