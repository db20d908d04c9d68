#ifndef KELLY_GROWTH_HPP
#define KELLY_GROWTH_HPP

#include <vector>

#include "kelly/core.hpp"
#include "kelly/distribution.hpp"
#include "kelly/extended_real.hpp"

namespace kelly {

/// Expected log growth sum_i p_i * log(1 + k'x_i). Returns minus infinity as
/// soon as any atom with positive probability has 1 + k'x_i <= 0 (extended
/// logarithm); the comparison is exact, with no epsilon. Atoms are summed in
/// index order with compensated accumulation.
ExtendedReal log_growth(const DiscreteDistribution& dist, const FractionVector& k);

/// Gradient sum_i p_i * x_i / (1 + k'x_i). Valid only strictly inside the
/// survival region; throws BoundaryError at or beyond 1 + k'x_i = 0.
std::vector<double> log_growth_gradient(const DiscreteDistribution& dist,
                                        const FractionVector& k);

/// Scalar survival interval intersected with the cap box:
/// [max(-1/X_max, -cap), min(-1/X_min, cap)]. A one-sided support leaves the
/// other side bounded by the cap alone (X_max <= 0 drops the lower survival
/// bound, X_min >= 0 the upper).
ClosedInterval feasible_interval(const DiscreteDistribution& dist, double cap);

}  // namespace kelly

#endif
