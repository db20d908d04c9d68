#ifndef KELLY_COMPENSATED_HPP
#define KELLY_COMPENSATED_HPP

#include <cmath>

namespace kelly {

/// Neumaier compensated accumulator. Keeps million-atom sums accurate to a
/// few ulps; result is deterministic for a fixed addition order.
class CompensatedSum {
public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const noexcept { return sum_ + c_; }

private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace kelly

#endif
