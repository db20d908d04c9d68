#include "kelly/growth.hpp"

#include <cmath>

#include "kelly/compensated.hpp"
#include "kelly/errors.hpp"

namespace kelly {

namespace {

void check_dims(const DiscreteDistribution& dist, const FractionVector& k, const char* op) {
  if (dist.dim() != k.dim())
    throw DimensionError(std::string(op) + ": fraction dim " + std::to_string(k.dim()) +
                         " does not match distribution dim " + std::to_string(dist.dim()));
}

}  // namespace

ExtendedReal log_growth(const DiscreteDistribution& dist, const FractionVector& k) {
  check_dims(dist, k, "log_growth");
  CompensatedSum acc;
  const auto kv = k.values();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.prob(i);
    if (!(p > 0.0)) continue;
    const double s = dot(kv, dist.atom(i));
    // 1 + s <= 0 is exact here: s <= -1.
    if (s <= -1.0) return ExtendedReal::neg_infinity();
    acc.add(p * std::log1p(s));
  }
  return ExtendedReal(acc.value());
}

std::vector<double> log_growth_gradient(const DiscreteDistribution& dist,
                                        const FractionVector& k) {
  check_dims(dist, k, "log_growth_gradient");
  const std::size_t d = dist.dim();
  std::vector<CompensatedSum> acc(d);
  const auto kv = k.values();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.prob(i);
    if (!(p > 0.0)) continue;
    const auto x = dist.atom(i);
    const double s = dot(kv, x);
    if (s <= -1.0)
      throw BoundaryError("log_growth_gradient: evaluation at or beyond the survival boundary");
    const double w = p / (1.0 + s);
    for (std::size_t j = 0; j < d; ++j) acc[j].add(w * x[j]);
  }
  std::vector<double> grad(d);
  for (std::size_t j = 0; j < d; ++j) grad[j] = acc[j].value();
  return grad;
}

ClosedInterval feasible_interval(const DiscreteDistribution& dist, double cap) {
  if (!(cap > 0.0)) throw DomainError("feasible_interval: cap must be positive");
  if (dist.dim() != 1) throw DimensionError("feasible_interval: distribution must be scalar");
  const SupportExtremes ex = support_extremes(dist);
  const double x_min = ex.min[0];
  const double x_max = ex.max[0];
  const double lo = x_max > 0.0 ? std::max(-1.0 / x_max, -cap) : -cap;
  const double hi = x_min < 0.0 ? std::min(-1.0 / x_min, cap) : cap;
  return {lo, hi};
}

}  // namespace kelly
