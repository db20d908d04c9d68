#ifndef KELLY_DISTRIBUTION_HPP
#define KELLY_DISTRIBUTION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "kelly/core.hpp"
#include "kelly/rng.hpp"

namespace kelly {

/// Finite set of weighted return points. The universal representation for
/// empirical distributions and the discrete theoretical models. Atoms are
/// stored row-major (atom i occupies [i*dim, (i+1)*dim)). Immutable after
/// construction.
///
/// Invariants enforced by the constructor: at least one atom, all atom
/// coordinates finite, probabilities nonnegative and summing to 1 within
/// 1e-12 (checked with compensated summation).
class DiscreteDistribution {
public:
  DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return probs_.size(); }

  std::span<const double> atom(std::size_t i) const noexcept {
    return {atoms_.data() + i * dim_, dim_};
  }
  double prob(std::size_t i) const noexcept { return probs_[i]; }

  std::span<const double> atoms_flat() const noexcept { return atoms_; }
  std::span<const double> probs() const noexcept { return probs_; }

private:
  std::vector<double> atoms_;
  std::vector<double> probs_;
  std::size_t dim_;
};

/// Coordinate-wise extremes of the support (atoms with positive probability).
struct SupportExtremes {
  std::vector<double> min;
  std::vector<double> max;
};

// ---------------------------------------------------------------------------
// Theoretical model specifications
// ---------------------------------------------------------------------------

/// Even-money biased coin: +1 with probability p, -1 otherwise.
struct BernoulliCoin {
  double p;
};

/// Near-certain small win against a rare large loss: +1 with probability
/// 1-epsilon, -x0 with probability epsilon. Requires x0 > 0 and
/// 0 < epsilon < 1/(1+x0), which keeps the optimal fraction positive.
struct ToyBernoulli {
  double epsilon;
  double x0;
};

/// Normal per-period returns. Has no finite atom form; usable only through
/// sampling and the theoretical (no-bet) analysis.
struct NormalReturns {
  double mu;
  double sigma;
};

/// Heavy-left-tailed discrete model whose log growth at the reference
/// fraction diverges to minus infinity as the truncation grows: atom +1 with
/// unnormalized weight 1/(2*theta), atoms (e^-k - 1)/k_ref with weights
/// 1/(k^2*theta) for k = 1..n_terms, theta = 1/2 + pi^2/6, then renormalized
/// over the retained atoms.
struct Pathological {
  double k_ref;
  std::size_t n_terms;
};

using ModelSpec = std::variant<BernoulliCoin, ToyBernoulli, NormalReturns, Pathological>;

/// Throws DomainError when the parameters violate the model's constraints.
void validate(const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Samples
// ---------------------------------------------------------------------------

/// Raw draws, row-major like DiscreteDistribution atoms. The seed is recorded
/// for provenance when the set came from a seeded sampler.
struct SampleSet {
  std::vector<double> values;
  std::size_t dim = 1;
  std::optional<std::uint64_t> seed;

  std::size_t count() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Empirical distribution of a sample set: each distinct point becomes an
/// atom with probability multiplicity/m. Points are merged on exact floating
/// equality only (no binning) and atoms come out in ascending lexicographic
/// order, so the result is independent of sample order.
DiscreteDistribution empirical_from_samples(const SampleSet& samples);

/// Atom form of a discrete model. NormalReturns is rejected (continuous
/// model); draw samples with gaussian_samples instead.
DiscreteDistribution from_spec(const ModelSpec& spec);

/// m independent draws from N(mu, sigma), deterministic under the seed.
SampleSet gaussian_samples(double mu, double sigma, std::size_t m, std::uint64_t seed);

/// i.i.d. atom draws from a discrete distribution (inverse-CDF on uniforms),
/// appended flat in draw order.
std::vector<double> sample_atoms(const DiscreteDistribution& dist, std::size_t n, Rng& rng);

/// Coordinate-wise min and max over atoms with positive probability.
SupportExtremes support_extremes(const DiscreteDistribution& dist);

/// Reads the sample CSV format: one row per sample, d comma-separated decimal
/// fields, rows starting with '#' skipped.
SampleSet read_samples_csv(std::istream& in);

}  // namespace kelly

#endif
