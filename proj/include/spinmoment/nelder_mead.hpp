#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace spinmoment {

template <typename Scalar>
struct NelderMeadOptions {
  Scalar f_tol = Scalar(1e-10);
  Scalar x_tol = Scalar(1e-10);
  /// Budget shared by the initial run and all re-initializations.
  int max_iterations = 2000;
  /// Relative size of the initial simplex edges.
  Scalar initial_step = Scalar(0.05);
  /// Edge used for coordinates that start at zero.
  Scalar zero_step = Scalar(0.00025);
  /// Dimension-dependent coefficients (Gao & Han); helps above ~5 parameters.
  bool adaptive = false;
  /// After convergence, rebuild the simplex at the best point up to this many
  /// times, stopping once a rebuild no longer improves by more than f_tol.
  int reinitializations = 3;
};

template <typename Scalar>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value = std::numeric_limits<Scalar>::infinity();
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

template <typename Scalar, typename F>
NelderMeadResult<Scalar> nelder_mead_single(F& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
                                            const NelderMeadOptions<Scalar>& opt, int budget) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x0.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const Scalar dn = Scalar(n);

  const Scalar reflect = Scalar(1);
  const Scalar expand = opt.adaptive ? Scalar(1) + Scalar(2) / dn : Scalar(2);
  const Scalar contract = opt.adaptive ? Scalar(0.75) - Scalar(1) / (Scalar(2) * dn) : Scalar(0.5);
  const Scalar shrink = opt.adaptive ? Scalar(1) - Scalar(1) / dn : Scalar(0.5);

  NelderMeadResult<Scalar> res;
  auto eval = [&](const Vector& x) {
    ++res.evaluations;
    Scalar v = f(x);
    return std::isnan(v) ? inf : v;
  };

  std::vector<Vector> pts(n + 1, x0);
  std::vector<Scalar> vals(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar& c = pts[i + 1](i);
    c = c != Scalar(0) ? c * (Scalar(1) + opt.initial_step) : opt.zero_step;
  }
  for (Eigen::Index i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<Eigen::Index> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return vals[a] < vals[b]; });
    std::vector<Vector> p2;
    std::vector<Scalar> v2;
    p2.reserve(n + 1);
    v2.reserve(n + 1);
    for (auto k : order) {
      p2.push_back(std::move(pts[k]));
      v2.push_back(vals[k]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  while (true) {
    sort_simplex();
    Scalar f_spread = 0, x_spread = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
      f_spread = std::max(f_spread, std::abs(vals[i] - vals[0]));
      x_spread = std::max(x_spread, (pts[i] - pts[0]).cwiseAbs().maxCoeff());
    }
    const Scalar x_scale = Scalar(1) + pts[0].cwiseAbs().maxCoeff();
    if (std::isfinite(vals[0]) && f_spread <= opt.f_tol && x_spread <= opt.x_tol * x_scale) {
      res.converged = true;
      break;
    }
    if (vals[0] == -inf) {
      // Unbounded below; nothing further to find.
      res.converged = true;
      break;
    }
    if (res.iterations >= budget) break;
    ++res.iterations;

    Vector centroid = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += pts[i];
    centroid /= dn;

    const Vector& worst = pts[n];
    Vector xr = centroid + reflect * (centroid - worst);
    Scalar fr = eval(xr);

    if (fr < vals[0]) {
      Vector xe = centroid + expand * (xr - centroid);
      Scalar fe = eval(xe);
      if (fe < fr) {
        pts[n] = std::move(xe);
        vals[n] = fe;
      } else {
        pts[n] = std::move(xr);
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      pts[n] = std::move(xr);
      vals[n] = fr;
      continue;
    }

    bool accepted = false;
    if (fr < vals[n]) {
      Vector xc = centroid + contract * (xr - centroid);
      Scalar fc = eval(xc);
      if (fc <= fr) {
        pts[n] = std::move(xc);
        vals[n] = fc;
        accepted = true;
      }
    } else {
      Vector xc = centroid - contract * (centroid - worst);
      Scalar fc = eval(xc);
      if (fc < vals[n]) {
        pts[n] = std::move(xc);
        vals[n] = fc;
        accepted = true;
      }
    }
    if (!accepted) {
      for (Eigen::Index i = 1; i <= n; ++i) {
        pts[i] = pts[0] + shrink * (pts[i] - pts[0]);
        vals[i] = eval(pts[i]);
      }
    }
  }
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

}  // namespace detail

/// Derivative-free simplex descent, minimizing f: R^n -> Scalar. NaN values are
/// treated as +infinity.
template <typename Scalar, typename F>
NelderMeadResult<Scalar> nelder_mead(F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
                                     const NelderMeadOptions<Scalar>& opt = {}) {
  auto run = detail::nelder_mead_single(f, x0, opt, opt.max_iterations);
  for (int k = 0; k < opt.reinitializations && run.converged; ++k) {
    const int left = opt.max_iterations - run.iterations;
    if (left <= 0) break;
    auto next = detail::nelder_mead_single(f, run.x, opt, left);
    const bool improved = next.value < run.value - opt.f_tol;
    next.iterations += run.iterations;
    next.evaluations += run.evaluations;
    if (next.value <= run.value) {
      run = std::move(next);
    } else {
      run.iterations = next.iterations;
      run.evaluations = next.evaluations;
    }
    if (!improved) break;
  }
  return run;
}

}  // namespace spinmoment
