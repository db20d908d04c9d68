#ifndef KELLY_OPTIMIZER_HPP
#define KELLY_OPTIMIZER_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "kelly/core.hpp"
#include "kelly/distribution.hpp"
#include "kelly/extended_real.hpp"
#include "kelly/growth.hpp"

namespace kelly {

/// Which constraint is tight at the optimum.
enum class ActiveBound { interior, cap, survival };

const char* to_string(ActiveBound b) noexcept;

struct OptimizerConfig {
  /// Box bound |k_i| <= cap. The default 1.0 allows at most the full account
  /// on either side; 2.0 matches typical brokerage leverage limits.
  double cap = 1.0;
  /// Convergence tolerance on the fraction.
  double tol_k = 1e-10;
  /// Minimum growth improvement worth another iteration.
  double tol_g = 1e-12;
  std::size_t max_iterations = 10'000;

  void validate() const;
};

struct OptimizationResult {
  FractionVector k_star;
  ExtendedReal g_star;
  std::size_t iterations = 0;
  bool converged = false;
  ActiveBound active_bound = ActiveBound::interior;
  /// Set when a closed-form rule decided the answer (e.g. "unbounded support").
  std::string rationale;
};

/// Serializes to the result JSON schema: k_star (array), g_star (number or
/// "-inf"), iterations, converged, active_bound, plus rationale when present.
std::string to_json(const OptimizationResult& result);

/// Golden-section search over the scalar feasible interval. Handles the
/// extended-real objective (minus infinity off the survival interior) without
/// derivatives; exact ties break toward the smaller |k|.
OptimizationResult optimize_scalar(const DiscreteDistribution& dist,
                                   const OptimizerConfig& cfg = {});

/// Projected gradient ascent from k = 0 (always strictly interior) with
/// backtracking line search; any step that lands outside the survival region
/// evaluates to minus infinity and is rejected. A few Newton steps on the
/// free coordinates sharpen the final iterate.
OptimizationResult optimize_vector(const DiscreteDistribution& dist,
                                   const OptimizerConfig& cfg = {});

/// Optimal fraction for the even-money coin: 2p - 1.
double coin_closed_form(double p);

/// Data-driven coin rule max(2*p_hat - 1, 0): never short on a sample
/// frequency alone.
double empirical_coin_fraction(double p_hat);

/// Optimal fraction (1 - epsilon*(1+x0))/x0 for the rare-large-loss model;
/// always lies strictly between 0 and 1/x0.
double toy_closed_form(double epsilon, double x0);

/// Probability 1 - (1-epsilon)^M that at least one of M draws is the rare
/// bad outcome.
double p_bad(double epsilon, std::uint64_t sample_budget);

/// Continuous-time limiting fraction mu / sigma^2.
double merton_fraction(double mu_hat, double sigma_hat);

/// Optimal fraction under the theoretical model itself. Normal returns have
/// unbounded two-sided support, so the only admissible fraction is 0
/// regardless of mu and sigma; the discrete models use their closed forms
/// (clamped to the cap box) or, for the pathological model, the numeric
/// scalar solver on the truncated atoms.
OptimizationResult theoretical_kelly(const ModelSpec& spec, const OptimizerConfig& cfg = {});

}  // namespace kelly

#endif
