#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace spinmoment {

/// A real number stored as sign and log of magnitude. Zero is
/// {sign = 0, log_abs = -inf}.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog of(double x) {
    if (x == 0.0 || std::isnan(x)) return {};
    return {std::log(std::abs(x)), x > 0 ? 1 : -1};
  }
  bool is_zero() const { return sign == 0; }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend SignedLog operator*(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }
  /// Integer power; x^0 = 1 including 0^0.
  SignedLog pow(int k) const {
    if (k == 0) return {0.0, 1};
    if (sign == 0) return {};
    return {log_abs * k, (k % 2 != 0) ? sign : 1};
  }
};

/// Sum of signed terms in the log domain: factor out the largest magnitude,
/// then add the rescaled terms.
class SignedLogSum {
 public:
  void add(SignedLog t) {
    if (!t.is_zero()) terms_.push_back(t);
  }

  SignedLog result() const {
    if (terms_.empty()) return {};
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) peak = std::max(peak, t.log_abs);
    double acc = 0.0;
    for (const auto& t : terms_) acc += t.sign * std::exp(t.log_abs - peak);
    if (acc == 0.0) return {};
    return {peak + std::log(std::abs(acc)), acc > 0 ? 1 : -1};
  }

 private:
  std::vector<SignedLog> terms_;
};

}  // namespace spinmoment
