#ifndef KELLY_INGEST_HPP
#define KELLY_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kelly/core.hpp"

namespace kelly {

/// Ordered positive tick prices S(0..m-1).
struct TickSeries {
  std::vector<double> prices;
  std::string label;
};

/// Per-period simple-return summary. Population convention: the variance
/// denominator is m, not m-1 (this feeds moment matching, not inference).
struct ReturnStats {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t m = 0;
  /// Present when x_min < 0 < x_max: the scalar confinement implied by the
  /// observed extremes.
  std::optional<ClosedInterval> confinement;
};

std::string to_json(const ReturnStats& stats);

/// Parses "timestamp,price" CSV with one header line. Timestamps are opaque
/// ordered tokens (numeric compare when both sides parse as numbers, string
/// compare otherwise) validated nondecreasing; prices must be positive.
/// Malformed input throws ParseError with the 1-based file line.
TickSeries read_prices_csv(std::istream& in, std::string label = "");

TickSeries read_prices_csv_file(const std::string& path);

/// Simple returns X(k) = (S(k+1) - S(k)) / S(k), length m-1. Zero returns
/// are preserved.
std::vector<double> returns_from_prices(const TickSeries& ticks);

/// Discrete-time geometric Brownian tick generator:
/// S(k+1) = S(k) * exp(mu_tick - sigma_tick^2/2 + sigma_tick * Z(k)).
/// Produces m prices; deterministic under the seed.
TickSeries gbm_ticks(double s0, double mu_tick, double sigma_tick, std::size_t m,
                     std::uint64_t seed);

/// Population mean/std and exact extremes of a return sequence.
ReturnStats summary_stats(std::span<const double> returns);

}  // namespace kelly

#endif
