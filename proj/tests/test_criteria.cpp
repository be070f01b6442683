#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinmoment/criteria.hpp"

using namespace spinmoment;

namespace {

const double kPi4 = std::numbers::pi / 4;

std::vector<StateFamily> symmetric_families(int tj) {
  std::vector<StateFamily> out{UniformMax{}, Bosonic{}};
  if (tj == 1) out.push_back(GeneralizedGhz{kPi4});
  if (tj == 2) out.push_back(SpinOneR{0.6});
  return out;
}

}  // namespace

TEST_CASE("canonical examples") {
  const auto ghz3 = make_state(GeneralizedGhz{kPi4}, SpinQuantum(1), 3);
  const auto bell = evaluate(ghz3, CriterionKind::bell(), Strategy::Canonical);
  CHECK(bell.b == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(bell.violated);

  const auto u = evaluate(make_state(UniformMax{}, SpinQuantum(2), 2), CriterionKind::bell(), Strategy::Canonical);
  CHECK(u.b == doctest::Approx(2 * std::sqrt(2.0) / 3).epsilon(1e-14));
  CHECK_FALSE(u.violated);
  CHECK(u.backend == Backend::Analytic);

  const auto zero = evaluate(make_state(SpinOneR{0.0}, SpinQuantum(2), 2), CriterionKind::bell(), Strategy::Canonical);
  CHECK(zero.b == 0.0);
  CHECK_FALSE(zero.violated);
}

TEST_CASE("exhaustive HZ on GHZ finds R = 0") {
  const auto ghz3 = make_state(GeneralizedGhz{kPi4}, SpinQuantum(1), 3);
  const auto res = evaluate(ghz3, CriterionKind::ent_hz(), Strategy::Exhaustive);
  CHECK(std::isinf(res.b));
  CHECK(res.violated);
  CHECK(res.rhs == 0.0);
  CHECK(to_string(res.signs.l) == "+--");
  CHECK(res.backend == Backend::Oracle);
}

TEST_CASE("undefined B") {
  const auto product = make_state(GeneralizedGhz{0.0}, SpinQuantum(1), 3);
  const auto res = evaluate(product, CriterionKind::ent_hz(), Strategy::Canonical);
  CHECK_FALSE(res.b_defined());
  CHECK_FALSE(res.violated);
}

TEST_CASE("equality is not a violation") {
  // GHZ at N = 2: L = R for the Bell kind.
  const auto ghz2 = make_state(Bosonic{}, SpinQuantum(1), 2);
  const auto res = evaluate(ghz2, CriterionKind::bell(), Strategy::Canonical);
  CHECK(res.b == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(res.violated);
  CHECK_FALSE(verdict_from_moments(CriterionKind::bell(), 1.0, 1.0).violated);
  CHECK(verdict_from_moments(CriterionKind::bell(), 1.0 + 1e-9, 1.0).violated);
  CHECK(std::isinf(verdict_from_moments(CriterionKind::bell(), 1.0, 0.0).b));
  CHECK_THROWS_AS(verdict_from_moments(CriterionKind::bell(), -1.0, 1.0), DomainError);
}

TEST_CASE("exhaustive dominates canonical and picks all-equal s for symmetric states") {
  for (int tj = 1; tj <= 4; ++tj) {
    for (int n = 2; n <= 6; ++n) {
      const auto size = hilbert_dimension(tj + 1, n);
      if (*size > 4096) continue;
      for (const auto& family : symmetric_families(tj)) {
        const auto s = make_state(family, SpinQuantum(tj), n);
        for (auto kind : {CriterionKind::bell(), CriterionKind::ent_cj(), CriterionKind::ent_hz(),
                          CriterionKind::steering(1), CriterionKind::steering(1, Bound::HZ)}) {
          CAPTURE(tj);
          CAPTURE(n);
          CAPTURE(kind.token());
          const auto c = evaluate(s, kind, Strategy::Canonical);
          const auto e = evaluate(s, kind, Strategy::Exhaustive);
          if (c.b_defined()) CHECK(e.b >= c.b * (1 - 1e-12));
          const auto& sv = e.signs.s;
          CHECK(std::all_of(sv.begin(), sv.end(), [&](Sign x) { return x == sv.front(); }));
        }
      }
    }
  }
}

TEST_CASE("exhaustive results are reproducible") {
  const auto s = make_state(Bosonic{}, SpinQuantum(2), 5);
  const auto a = evaluate(s, CriterionKind::steering(2, Bound::HZ), Strategy::Exhaustive);
  const auto b = evaluate(s, CriterionKind::steering(2, Bound::HZ), Strategy::Exhaustive);
  CHECK(a.b == b.b);
  CHECK(a.signs.s == b.signs.s);
  CHECK(a.signs.l == b.signs.l);
}

TEST_CASE("exhaustive feasibility") {
  CHECK_THROWS_AS(evaluate(make_state(Bosonic{}, SpinQuantum(1), 17), CriterionKind::bell(), Strategy::Exhaustive),
                  InfeasibleError);
  CriteriaOptions small;
  small.cap = 100;
  CHECK_THROWS_AS(evaluate(make_state(Bosonic{}, SpinQuantum(2), 5), CriterionKind::bell(), Strategy::Exhaustive, small),
                  InfeasibleError);
  // Canonical falls back to the closed forms for states too large to expand.
  const auto big = make_state(Custom{Eigen::Vector3d(1, 2, 3)}, SpinQuantum(2), 30);
  CHECK(evaluate(big, CriterionKind::bell(), Strategy::Canonical).backend == Backend::Analytic);
  const auto small_state = make_state(Custom{Eigen::Vector3d(1, 2, 3)}, SpinQuantum(2), 3);
  CHECK(evaluate(small_state, CriterionKind::bell(), Strategy::Canonical).backend == Backend::Oracle);
}

TEST_CASE("non-symmetric states through both backends") {
  const auto s = make_state(Custom{Eigen::Vector3d(1, 2, 3)}, SpinQuantum(2), 4);
  for (auto kind : {CriterionKind::bell(), CriterionKind::ent_cj(), CriterionKind::steering(2)}) {
    const auto o = evaluate(s, kind, Strategy::Canonical);
    const auto a = evaluate_analytic(s, kind);
    CHECK(o.b == doctest::Approx(a.b).epsilon(1e-12));
  }
}

TEST_CASE("steering with T = N aliases entanglement") {
  const auto s = make_state(Bosonic{}, SpinQuantum(2), 3);
  const auto a = evaluate(s, CriterionKind::steering(3), Strategy::Canonical);
  const auto b = evaluate(s, CriterionKind::ent_cj(), Strategy::Canonical);
  CHECK(a.kind == CriterionKind::ent_cj());
  CHECK(a.b == b.b);
  CHECK_THROWS_AS(evaluate(s, CriterionKind::steering(4), Strategy::Canonical), InvalidArgument);
}

TEST_CASE("nested verdicts") {
  const auto ghz = make_state(GeneralizedGhz{kPi4}, SpinQuantum(1), 6);
  const auto v = nested_verdicts(ghz, 6);
  REQUIRE(v.size() == 7);
  for (int t = 0; t <= 6; ++t) CHECK(v[t].b == doctest::Approx(std::pow(2.0, (6 + t - 2) / 2.0)).epsilon(1e-12));
  CHECK(v[0].b == evaluate(ghz, CriterionKind::bell(), Strategy::Canonical).b);

  const auto bos = make_state(Bosonic{}, SpinQuantum(2), 5);
  const auto w = nested_verdicts(bos, 2);
  CHECK(w[0].b < w[1].b);
  CHECK(w[1].b < w[2].b);

  for (int tj = 1; tj <= 6; ++tj) {
    for (int n = 2; n <= 10; ++n) {
      for (const auto& family : symmetric_families(tj)) {
        const auto list = nested_verdicts(make_state(family, SpinQuantum(tj), n), n);
        for (int t = 0; t < n; ++t) {
          CHECK(list[t + 1].b >= list[t].b);
          if (list[t].violated) CHECK(list[t + 1].violated);
        }
      }
    }
  }
  CHECK_THROWS_AS(nested_verdicts(bos, 6), InvalidArgument);
}

TEST_CASE("kind tokens") {
  for (auto k : {CriterionKind::bell(), CriterionKind::ent_hz(), CriterionKind::ent_cj(), CriterionKind::steering(3),
                 CriterionKind::steering(2, Bound::HZ)}) {
    CHECK(CriterionKind::parse(k.token()) == k);
  }
  CHECK(CriterionKind::steering(1).token() == "epr1");
  CHECK_THROWS_AS(CriterionKind::parse("epr0"), InvalidArgument);
  CHECK_THROWS_AS(CriterionKind::parse("chsh"), InvalidArgument);
  CHECK(to_string(canonical_l(3)) == "+--");
  CHECK(to_string(canonical_s(2)) == "--");
}
