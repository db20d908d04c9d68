#ifndef KELLY_SIMULATOR_HPP
#define KELLY_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kelly/core.hpp"
#include "kelly/distribution.hpp"
#include "kelly/optimizer.hpp"

namespace kelly {

/// Account values V(0..N) under the wealth recursion. Ruin absorbs at
/// exactly zero: once a value is 0 every later value is 0.
struct WealthPath {
  std::vector<double> values;
  bool ruined = false;

  /// Realized per-step log growth log(V(N)/V(0)) / N; minus infinity after ruin.
  double realized_growth() const;
};

/// Applies V(j+1) = (1 + k'X(j)) V(j) to a flat row-major return sequence.
/// A zero multiplier absorbs wealth at 0; a negative one breaches the
/// survival requirement and throws SurvivalError with the offending step.
WealthPath wealth_path(std::span<const double> returns, std::size_t dim,
                       const FractionVector& k, double v0);

/// Side-by-side outcome of the model-trusting bettor and the data-driven
/// bettor on one shared future.
struct ComparisonReport {
  double k_theory = 0.0;
  double k_empirical = 0.0;
  std::size_t m = 0;
  double realized_growth_theory = 0.0;
  double realized_growth_empirical = 0.0;
  /// True when the rare-loss atom -x0 showed up among the estimation draws
  /// (meaningful for the ToyBernoulli model; always false otherwise).
  bool bad_sample_seen = false;
};

std::string to_json(const ComparisonReport& report);

/// Draws m estimation samples from the model, sizes one bet from the
/// theoretical optimum and one from the empirical distribution, then runs
/// both fractions over the same n_future fresh draws. Deterministic under
/// the seed. Realized growths are accumulated as mean log multipliers, so
/// long profitable paths cannot overflow the wealth scale.
ComparisonReport run_comparison(const ModelSpec& spec, std::size_t m, std::size_t n_future,
                                std::uint64_t seed, const OptimizerConfig& cfg = {});

/// Empirical optimal fraction as a function of the mean: one shared standard
/// normal noise vector Z (common random numbers), samples mu + sigma*Z per
/// grid point, each optimized by the scalar solver. Sharing Z isolates the
/// mu effect; independent draws would leave the curve non-monotone at small
/// m because the sample extremes jump around.
std::vector<std::pair<double, double>> sweep_kelly_vs_mu(std::span<const double> mu_grid,
                                                         double sigma, std::size_t m,
                                                         std::uint64_t seed,
                                                         const OptimizerConfig& cfg = {});

}  // namespace kelly

#endif
