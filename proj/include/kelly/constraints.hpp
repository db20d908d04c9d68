#ifndef KELLY_CONSTRAINTS_HPP
#define KELLY_CONSTRAINTS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "kelly/core.hpp"
#include "kelly/distribution.hpp"

namespace kelly {

/// Axis-aligned box |x_i - center_i| <= half_widths_i, all half widths positive.
struct Hypercube {
  std::vector<double> center;
  std::vector<double> half_widths;
};

/// Euclidean ball ||x - center|| <= radius, radius positive.
struct Hypersphere {
  std::vector<double> center;
  double radius;
};

/// Finite point set, row-major. Its support function equals that of the
/// convex hull, so no explicit hull is ever built.
class AtomHull {
public:
  AtomHull(std::vector<double> points, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size() / dim_; }
  std::span<const double> point(std::size_t i) const noexcept {
    return {points_.data() + i * dim_, dim_};
  }

private:
  std::vector<double> points_;
  std::size_t dim_;
};

/// Positive-probability atoms of a distribution, as a hull.
AtomHull atom_hull(const DiscreteDistribution& dist);

/// Geometric description of a return support set. The interval variant is
/// one-dimensional; the others carry their own dimension.
class SupportSet {
public:
  using Shape = std::variant<ClosedInterval, Hypercube, Hypersphere, AtomHull>;

  SupportSet(ClosedInterval interval);
  SupportSet(Hypercube cube);
  SupportSet(Hypersphere sphere);
  SupportSet(AtomHull hull);

  std::size_t dim() const noexcept { return dim_; }
  const Shape& shape() const noexcept { return shape_; }

private:
  Shape shape_;
  std::size_t dim_;
};

/// Support function h(y) = sup over the set of y'x. Finite for every
/// representable set (all variants are bounded).
double support_function(const SupportSet& set, std::span<const double> y);

/// Restricted-betting feasibility: h(-k) <= 1, compared exactly. Boundary
/// points count as feasible (the constraint set is closed).
bool kelly_feasible(const SupportSet& set, const FractionVector& k);

/// Scalar confinement [-1/x_max, -1/x_min] for x_min < 0 < x_max. Infinite
/// extremes collapse their side to 0, so a doubly unbounded support forces
/// the degenerate interval {0}: the only admissible bet is no bet.
///
/// Note on lognormal price models: gross returns above -1 (e.g. discrete-time
/// geometric Brownian ticks) have one-sided support and do NOT degenerate;
/// the zero-bet conclusion needs genuinely two-sided unbounded returns such
/// as normally distributed ones.
ClosedInterval confinement_interval(double x_min, double x_max);

/// One point of the spherical constraint boundary.
struct BoundaryPoint {
  double theta;
  std::array<double, 2> k;
};

/// Boundary of {k : r*||k|| - k'x0 <= 1} in the plane, traced as
/// k(theta) = (cos theta, sin theta) / (r - (cos theta, sin theta)'x0) on a
/// uniform theta grid over [0, 2*pi). Requires r > ||x0||, which keeps the
/// curve bounded and closed.
std::vector<BoundaryPoint> sphere_constraint_boundary(std::array<double, 2> x0, double r,
                                                      std::size_t n_points);

}  // namespace kelly

#endif
