#ifndef KELLY_CORE_HPP
#define KELLY_CORE_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "kelly/errors.hpp"

namespace kelly {

/// Closed interval [lo, hi]. Endpoints may be infinite where a caller
/// explicitly allows it (confinement_interval).
struct ClosedInterval {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Betting fractions, one per coordinate of the return vector. All
/// coordinates finite. d = 1 for scalar problems, where the single-value
/// constructor applies.
class FractionVector {
public:
  FractionVector(std::vector<double> k) : k_(std::move(k)) {
    if (k_.empty()) throw DomainError("FractionVector: empty");
    for (double v : k_)
      if (!std::isfinite(v)) throw DomainError("FractionVector: non-finite coordinate");
  }
  FractionVector(std::initializer_list<double> k) : FractionVector(std::vector<double>(k)) {}
  FractionVector(double k) : FractionVector(std::vector<double>{k}) {}

  std::size_t dim() const noexcept { return k_.size(); }
  std::span<const double> values() const noexcept { return k_; }
  double operator[](std::size_t i) const noexcept { return k_[i]; }

  /// Scalar access; throws unless dim() == 1.
  double scalar() const {
    if (k_.size() != 1) throw DimensionError("FractionVector: scalar() on vector of dim > 1");
    return k_[0];
  }

private:
  std::vector<double> k_;
};

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) noexcept {
  return std::sqrt(dot(a, a));
}

}  // namespace kelly

#endif
