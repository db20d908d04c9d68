#include "kelly/constraints.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kelly/errors.hpp"

namespace kelly {

AtomHull::AtomHull(std::vector<double> points, std::size_t dim)
    : points_(std::move(points)), dim_(dim) {
  if (dim_ == 0) throw DomainError("AtomHull: dimension must be >= 1");
  if (points_.empty() || points_.size() % dim_ != 0)
    throw DimensionError("AtomHull: point data must be a nonempty multiple of dim");
  for (double x : points_)
    if (!std::isfinite(x)) throw DomainError("AtomHull: non-finite coordinate");
}

AtomHull atom_hull(const DiscreteDistribution& dist) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!(dist.prob(i) > 0.0)) continue;
    auto a = dist.atom(i);
    pts.insert(pts.end(), a.begin(), a.end());
  }
  if (pts.empty()) throw DomainError("atom_hull: no atom carries positive probability");
  return AtomHull(std::move(pts), dist.dim());
}

SupportSet::SupportSet(ClosedInterval interval) : shape_(interval), dim_(1) {
  if (!(interval.lo <= interval.hi))
    throw DomainError("SupportSet: interval requires lo <= hi");
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi))
    throw DomainError("SupportSet: interval endpoints must be finite");
}

SupportSet::SupportSet(Hypercube cube) : shape_(std::move(cube)), dim_(0) {
  const auto& c = std::get<Hypercube>(shape_);
  if (c.center.empty() || c.center.size() != c.half_widths.size())
    throw DimensionError("SupportSet: hypercube center and half_widths must match and be nonempty");
  for (double w : c.half_widths)
    if (!(w > 0.0)) throw DomainError("SupportSet: hypercube half widths must be positive");
  for (double x : c.center)
    if (!std::isfinite(x)) throw DomainError("SupportSet: non-finite hypercube center");
  dim_ = c.center.size();
}

SupportSet::SupportSet(Hypersphere sphere) : shape_(std::move(sphere)), dim_(0) {
  const auto& s = std::get<Hypersphere>(shape_);
  if (s.center.empty()) throw DimensionError("SupportSet: hypersphere center must be nonempty");
  if (!(s.radius > 0.0)) throw DomainError("SupportSet: hypersphere radius must be positive");
  for (double x : s.center)
    if (!std::isfinite(x)) throw DomainError("SupportSet: non-finite hypersphere center");
  dim_ = s.center.size();
}

SupportSet::SupportSet(AtomHull hull) : shape_(std::move(hull)), dim_(0) {
  dim_ = std::get<AtomHull>(shape_).dim();
}

double support_function(const SupportSet& set, std::span<const double> y) {
  if (y.size() != set.dim())
    throw DimensionError("support_function: direction dim does not match set dim");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ClosedInterval>) {
          return std::max(y[0] * s.lo, y[0] * s.hi);
        } else if constexpr (std::is_same_v<T, Hypercube>) {
          double h = 0.0;
          for (std::size_t i = 0; i < y.size(); ++i)
            h += std::abs(y[i]) * s.half_widths[i] + y[i] * s.center[i];
          return h;
        } else if constexpr (std::is_same_v<T, Hypersphere>) {
          return s.radius * norm2(y) + dot(y, s.center);
        } else {
          double best = -std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < s.size(); ++i) best = std::max(best, dot(y, s.point(i)));
          return best;
        }
      },
      set.shape());
}

bool kelly_feasible(const SupportSet& set, const FractionVector& k) {
  std::vector<double> neg(k.values().begin(), k.values().end());
  for (double& v : neg) v = -v;
  return support_function(set, neg) <= 1.0;
}

ClosedInterval confinement_interval(double x_min, double x_max) {
  if (std::isnan(x_min) || std::isnan(x_max))
    throw DomainError("confinement_interval: NaN extreme");
  if (!(x_min < 0.0)) throw DomainError("confinement_interval: x_min must be negative");
  if (!(x_max > 0.0)) throw DomainError("confinement_interval: x_max must be positive");
  const double lo = std::isinf(x_max) ? 0.0 : -1.0 / x_max;
  const double hi = std::isinf(x_min) ? 0.0 : -1.0 / x_min;
  return {lo, hi};
}

std::vector<BoundaryPoint> sphere_constraint_boundary(std::array<double, 2> x0, double r,
                                                      std::size_t n_points) {
  if (n_points < 3) throw DomainError("sphere_constraint_boundary: need at least 3 points");
  const double c_norm = std::hypot(x0[0], x0[1]);
  if (!(r > c_norm))
    throw DomainError(
        "sphere_constraint_boundary: unbounded boundary, radius must exceed ||x0||");
  std::vector<BoundaryPoint> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_points);
    const double cx = std::cos(theta);
    const double sx = std::sin(theta);
    const double rho = 1.0 / (r - (cx * x0[0] + sx * x0[1]));
    out.push_back({theta, {rho * cx, rho * sx}});
  }
  return out;
}

}  // namespace kelly
