#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tg {

/// A nonnegative real carried as its base-2 logarithm, with an explicit zero.
///
/// Certificate quantities in this project (potential sums, cluster-count
/// bounds) reach magnitudes like 2^{4k^2} that overflow every fixed-width
/// float, while all comparisons they feed have wide margins. Multiplication
/// adds logs; addition goes through the stable form max + log2(1 + 2^(min-max)).
/// Relative error is ~1 ulp per operation, so any expression composed of
/// fewer than ~10^6 operations stays well below 1e-9 relative error.
class Log2Real {
 public:
  Log2Real() : zero_(true), log2_(0.0) {}

  static Log2Real zero() { return Log2Real(); }
  static Log2Real one() { return from_log2(0.0); }

  static Log2Real from_log2(double lg) {
    Log2Real r;
    r.zero_ = false;
    r.log2_ = lg;
    return r;
  }

  static Log2Real from_value(double v) {
    if (v < 0.0) throw std::domain_error("Log2Real: negative value");
    if (v == 0.0) return zero();
    return from_log2(std::log2(v));
  }

  bool is_zero() const { return zero_; }

  /// Base-2 log; only meaningful when not zero.
  double log2() const {
    if (zero_) throw std::domain_error("Log2Real: log2 of zero");
    return log2_;
  }

  /// Saturates to +inf / 0 outside double range.
  double to_double() const {
    if (zero_) return 0.0;
    return std::exp2(log2_);
  }

  Log2Real operator*(const Log2Real& o) const {
    if (zero_ || o.zero_) return zero();
    return from_log2(log2_ + o.log2_);
  }

  Log2Real operator/(const Log2Real& o) const {
    if (o.zero_) throw std::domain_error("Log2Real: division by zero");
    if (zero_) return zero();
    return from_log2(log2_ - o.log2_);
  }

  Log2Real operator+(const Log2Real& o) const {
    if (zero_) return o;
    if (o.zero_) return *this;
    double hi = log2_, lo = o.log2_;
    if (hi < lo) std::swap(hi, lo);
    // log2(1+x) = log1p(x)/ln 2 keeps precision for tiny x
    return from_log2(hi + std::log1p(std::exp2(lo - hi)) / M_LN2);
  }

  Log2Real& operator*=(const Log2Real& o) { return *this = *this * o; }
  Log2Real& operator+=(const Log2Real& o) { return *this = *this + o; }
  Log2Real& operator/=(const Log2Real& o) { return *this = *this / o; }

  /// x^(1/p). Zero stays zero.
  Log2Real root(int p) const {
    if (p <= 0) throw std::domain_error("Log2Real: root order must be positive");
    if (zero_) return zero();
    return from_log2(log2_ / p);
  }

  /// x^e for real e; 0^e = 0 for e > 0, 0^0 = 1.
  Log2Real pow(double e) const {
    if (zero_) {
      if (e > 0.0) return zero();
      if (e == 0.0) return one();
      throw std::domain_error("Log2Real: zero to negative power");
    }
    return from_log2(log2_ * e);
  }

  bool operator<(const Log2Real& o) const {
    if (zero_) return !o.zero_;
    if (o.zero_) return false;
    return log2_ < o.log2_;
  }
  bool operator>(const Log2Real& o) const { return o < *this; }
  bool operator<=(const Log2Real& o) const { return !(o < *this); }
  bool operator>=(const Log2Real& o) const { return !(*this < o); }

  std::string str() const {
    if (zero_) return "0";
    return "2^" + std::to_string(log2_);
  }

 private:
  bool zero_;
  double log2_;
};

/// log2 of n! via lgamma.
inline double log2_factorial(double n) {
  return std::lgamma(n + 1.0) / M_LN2;
}

/// log2 of the binomial coefficient C(n, k) for real n >= k >= 0.
/// Exact 0 at k == 0 and k == n (the lgamma terms cancel exactly).
inline double log2_binomial(double n, double k) {
  if (k < 0.0 || k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / M_LN2;
}

inline Log2Real binomial_l2(double n, double k) {
  if (k < 0.0 || k > n) return Log2Real::zero();
  return Log2Real::from_log2(log2_binomial(n, k));
}

}  // namespace tg
