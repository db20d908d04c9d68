#ifndef KELLY_EXTENDED_REAL_HPP
#define KELLY_EXTENDED_REAL_HPP

#include <cmath>
#include <limits>
#include <ostream>

#include "kelly/errors.hpp"

namespace kelly {

/// A real number extended with negative infinity, the codomain of the
/// log-growth objective. Never holds NaN; minus infinity compares strictly
/// below every finite value. Arithmetic with the infinite value is handled
/// explicitly by callers rather than through IEEE propagation.
class ExtendedReal {
public:
  ExtendedReal(double v) : finite_(true), v_(v) {
    if (std::isnan(v)) throw DomainError("ExtendedReal: NaN is not a value");
    if (std::isinf(v)) throw DomainError("ExtendedReal: use neg_infinity()");
  }

  static ExtendedReal neg_infinity() noexcept {
    ExtendedReal r;
    r.finite_ = false;
    return r;
  }

  bool is_finite() const noexcept { return finite_; }
  bool is_neg_infinity() const noexcept { return !finite_; }

  /// Finite value; throws if minus infinity.
  double value() const {
    if (!finite_) throw DomainError("ExtendedReal: value() on -infinity");
    return v_;
  }

  /// Lossy view for I/O boundaries: -HUGE_VAL stands in for minus infinity.
  double as_double() const noexcept {
    return finite_ ? v_ : -std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator!=(const ExtendedReal& a, const ExtendedReal& b) noexcept { return !(a == b); }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) noexcept { return b < a; }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) noexcept { return !(b < a); }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) noexcept { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
    if (x.finite_) return os << x.v_;
    return os << "-inf";
  }

private:
  ExtendedReal() : finite_(false), v_(0.0) {}
  bool finite_;
  double v_;
};

}  // namespace kelly

#endif
