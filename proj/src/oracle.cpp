#include "spinmoment/oracle.hpp"

#include <cmath>

#include "spinmoment/errors.hpp"

namespace spinmoment {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kImagTolerance = 1e-10;

}  // namespace

SiteOperators make_site_operators(const SpinMatrices<double>& s, double c_j) {
  const Eigen::Index d = s.j.dim();
  SiteOperators ops;
  ops.j = s.j;
  ops.c_j = c_j;
  const Eigen::MatrixXcd transverse = s.jx * s.jx + s.jy * s.jy;
  ops.mats[static_cast<std::size_t>(SiteOp::Plus)] = s.jplus;
  ops.mats[static_cast<std::size_t>(SiteOp::Minus)] = s.jminus;
  ops.mats[static_cast<std::size_t>(SiteOp::XSquaredPlusYSquared)] = transverse;
  ops.mats[static_cast<std::size_t>(SiteOp::PlusMinus)] = s.jplus * s.jminus;
  ops.mats[static_cast<std::size_t>(SiteOp::MinusPlus)] = s.jminus * s.jplus;
  ops.mats[static_cast<std::size_t>(SiteOp::CjShifted)] =
      transverse - c_j * Eigen::MatrixXcd::Identity(d, d);
  ops.mats[static_cast<std::size_t>(SiteOp::Identity)] = Eigen::MatrixXcd::Identity(d, d);
  return ops;
}

SiteOperators make_site_operators(SpinQuantum j, double scale, std::optional<double> c_j) {
  const double bound = c_j ? *c_j : cj_bound(j).c_j;
  return make_site_operators(build_spin_matrices(j, scale), bound * scale * scale);
}

std::complex<double> expect_product(const Eigen::VectorXcd& psi, const SiteOperatorProduct& product,
                                    const SiteOperators& ops) {
  const int d = ops.j.dim();
  const int n = static_cast<int>(product.size());
  const auto size = hilbert_dimension(d, n);
  if (!size || static_cast<std::size_t>(psi.size()) != *size) {
    throw InvalidArgument("state vector length " + std::to_string(psi.size()) +
                          " does not match d^N for d=" + std::to_string(d) +
                          ", N=" + std::to_string(n));
  }
  if (std::abs(psi.squaredNorm() - 1.0) > kNormTolerance) {
    throw DomainError("state vector is not normalized");
  }

  Eigen::VectorXcd phi = psi;
  // Site k is base-d digit k counted from the most significant end; its
  // stride is d^(N-1-k). Viewing each block of d * stride entries as a
  // stride x d column-major matrix puts the site-k index on the columns.
  Eigen::Index stride = static_cast<Eigen::Index>(*size);
  for (int k = 0; k < n; ++k) {
    stride /= d;
    if (product[k] == SiteOp::Identity) continue;
    const Eigen::MatrixXcd op_t = ops[product[k]].transpose();
    const Eigen::Index block = stride * d;
    for (Eigen::Index start = 0; start < phi.size(); start += block) {
      Eigen::Map<Eigen::MatrixXcd> view(phi.data() + start, stride, d);
      view = view * op_t;
    }
  }
  return psi.dot(phi);
}

std::complex<double> expect_product(const Eigen::VectorXcd& psi, const SiteOperatorProduct& product,
                                    SpinQuantum j) {
  return expect_product(psi, product, make_site_operators(j));
}

SiteOperatorProduct lhs_product(const SignVector& s) {
  SiteOperatorProduct p;
  p.reserve(s.size());
  for (Sign x : s) p.push_back(x == Sign::Plus ? SiteOp::Plus : SiteOp::Minus);
  return p;
}

SiteOperatorProduct rhs_product(CriterionKind kind, int n_sites, const SignVector& l) {
  kind.validate(n_sites);
  const int t = kind.quantum_sites(n_sites);
  const Bound bound = kind.bound_kind();
  if (bound == Bound::HZ && static_cast<int>(l.size()) != t) {
    throw InvalidArgument("HZ bound needs " + std::to_string(t) + " l signs, got " +
                          std::to_string(l.size()));
  }
  SiteOperatorProduct p(static_cast<std::size_t>(n_sites), SiteOp::XSquaredPlusYSquared);
  for (int k = 0; k < t; ++k) {
    if (bound == Bound::CJ) {
      p[k] = SiteOp::CjShifted;
    } else {
      p[k] = l[k] == Sign::Plus ? SiteOp::PlusMinus : SiteOp::MinusPlus;
    }
  }
  return p;
}

MomentOracle::MomentOracle(const SymmetricCorrelatedState& state, const OracleOptions& options)
    : n_sites_(state.n_sites),
      ops_(make_site_operators(state.j, options.scale, options.c_j)),
      psi_(dense_vector(state, options.cap)) {}

double MomentOracle::lhs(const SignVector& s) const {
  if (static_cast<int>(s.size()) != n_sites_) throw InvalidArgument("need one s sign per site");
  return std::norm(expect_product(psi_, lhs_product(s), ops_));
}

double MomentOracle::hermitian(const SiteOperatorProduct& product) const {
  const std::complex<double> v = expect_product(psi_, product, ops_);
  const double scale = std::max(1.0, std::abs(v));
  if (std::abs(v.imag()) > kImagTolerance * scale) {
    throw DomainError("Hermitian moment has imaginary part " + std::to_string(v.imag()));
  }
  if (v.real() < -kImagTolerance * scale) {
    throw DomainError("moment is negative: " + std::to_string(v.real()));
  }
  return std::max(0.0, v.real());
}

double MomentOracle::rhs(CriterionKind kind, const SignVector& l) const {
  return hermitian(rhs_product(kind, n_sites_, l));
}

double lhs_moment(const SymmetricCorrelatedState& state, const SignVector& signs,
                  const OracleOptions& options) {
  return MomentOracle(state, options).lhs(signs);
}

double rhs_moment(const SymmetricCorrelatedState& state, CriterionKind kind, const SignVector& l_signs,
                  const OracleOptions& options) {
  return MomentOracle(state, options).rhs(kind, l_signs);
}

}  // namespace spinmoment
