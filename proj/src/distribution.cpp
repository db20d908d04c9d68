#include "kelly/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "kelly/compensated.hpp"
#include "kelly/errors.hpp"

namespace kelly {

DiscreteDistribution::DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs,
                                           std::size_t dim)
    : atoms_(std::move(atoms)), probs_(std::move(probs)), dim_(dim) {
  if (dim_ == 0) throw DomainError("DiscreteDistribution: dimension must be >= 1");
  if (probs_.empty()) throw DomainError("DiscreteDistribution: at least one atom required");
  if (atoms_.size() != probs_.size() * dim_)
    throw DimensionError("DiscreteDistribution: atom data does not match count * dim");
  for (double x : atoms_)
    if (!std::isfinite(x)) throw DomainError("DiscreteDistribution: non-finite atom coordinate");
  CompensatedSum total;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw DomainError("DiscreteDistribution: negative or NaN probability");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw DomainError("DiscreteDistribution: probabilities must sum to 1 within 1e-12");
}

void validate(const ModelSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BernoulliCoin>) {
          if (!(s.p >= 0.0 && s.p <= 1.0))
            throw DomainError("BernoulliCoin: p must lie in [0, 1]");
        } else if constexpr (std::is_same_v<T, ToyBernoulli>) {
          if (!(s.x0 > 0.0)) throw DomainError("ToyBernoulli: x0 must be positive");
          if (!(s.epsilon > 0.0 && s.epsilon < 1.0 / (1.0 + s.x0)))
            throw DomainError("ToyBernoulli: epsilon must satisfy 0 < epsilon < 1/(1+x0)");
        } else if constexpr (std::is_same_v<T, NormalReturns>) {
          if (!(s.sigma > 0.0)) throw DomainError("NormalReturns: sigma must be positive");
          if (!std::isfinite(s.mu)) throw DomainError("NormalReturns: mu must be finite");
        } else if constexpr (std::is_same_v<T, Pathological>) {
          if (!(s.k_ref > 0.0 && s.k_ref < 1.0))
            throw DomainError("Pathological: k_ref must lie in (0, 1)");
          if (s.n_terms < 1) throw DomainError("Pathological: n_terms must be >= 1");
        }
      },
      spec);
}

DiscreteDistribution empirical_from_samples(const SampleSet& samples) {
  const std::size_t d = samples.dim;
  if (d == 0) throw DomainError("empirical_from_samples: dimension must be >= 1");
  const std::size_t m = samples.count();
  if (m == 0) throw DomainError("empirical_from_samples: empty sample set");
  if (samples.values.size() != m * d)
    throw DimensionError("empirical_from_samples: sample data does not match count * dim");

  // Sort sample indices lexicographically, then merge runs of exactly equal
  // points. Sorting makes the atom order independent of the input order.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  const double* v = samples.values.data();
  auto lex_less = [&](std::size_t a, std::size_t b) {
    const double* pa = v + a * d;
    const double* pb = v + b * d;
    for (std::size_t j = 0; j < d; ++j) {
      if (pa[j] < pb[j]) return true;
      if (pb[j] < pa[j]) return false;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), lex_less);

  auto equal_points = [&](std::size_t a, std::size_t b) {
    const double* pa = v + a * d;
    const double* pb = v + b * d;
    for (std::size_t j = 0; j < d; ++j)
      if (pa[j] != pb[j]) return false;
    return true;
  };

  std::vector<double> atoms;
  std::vector<double> probs;
  std::size_t i = 0;
  while (i < m) {
    std::size_t run = i + 1;
    while (run < m && equal_points(order[i], order[run])) ++run;
    const double* p = v + order[i] * d;
    atoms.insert(atoms.end(), p, p + d);
    probs.push_back(static_cast<double>(run - i) / static_cast<double>(m));
    i = run;
  }
  return DiscreteDistribution(std::move(atoms), std::move(probs), d);
}

DiscreteDistribution from_spec(const ModelSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& s) -> DiscreteDistribution {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BernoulliCoin>) {
          return DiscreteDistribution({1.0, -1.0}, {s.p, 1.0 - s.p}, 1);
        } else if constexpr (std::is_same_v<T, ToyBernoulli>) {
          return DiscreteDistribution({1.0, -s.x0}, {1.0 - s.epsilon, s.epsilon}, 1);
        } else if constexpr (std::is_same_v<T, NormalReturns>) {
          throw DomainError(
              "from_spec: NormalReturns is a continuous model with no finite atom form; "
              "draw samples with gaussian_samples instead");
        } else {
          const double theta = 0.5 + std::numbers::pi * std::numbers::pi / 6.0;
          std::vector<double> atoms{1.0};
          std::vector<double> weights{1.0 / (2.0 * theta)};
          for (std::size_t k = 1; k <= s.n_terms; ++k) {
            atoms.push_back(std::expm1(-static_cast<double>(k)) / s.k_ref);
            weights.push_back(1.0 / (static_cast<double>(k) * static_cast<double>(k) * theta));
          }
          // Renormalize the retained weights so every atom keeps its relative
          // mass instead of dumping the tail on the last atom.
          CompensatedSum total;
          for (double w : weights) total.add(w);
          const double z = total.value();
          for (double& w : weights) w /= z;
          return DiscreteDistribution(std::move(atoms), std::move(weights), 1);
        }
      },
      spec);
}

SampleSet gaussian_samples(double mu, double sigma, std::size_t m, std::uint64_t seed) {
  if (!(sigma > 0.0)) throw DomainError("gaussian_samples: sigma must be positive");
  if (m == 0) throw DomainError("gaussian_samples: sample count must be >= 1");
  if (!std::isfinite(mu)) throw DomainError("gaussian_samples: mu must be finite");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(mu, sigma);
  SampleSet out;
  out.dim = 1;
  out.seed = seed;
  out.values.resize(m);
  for (double& x : out.values) x = normal(rng);
  return out;
}

std::vector<double> sample_atoms(const DiscreteDistribution& dist, std::size_t n, Rng& rng) {
  // Inverse CDF over the atom order.
  std::vector<double> cum(dist.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc.add(dist.prob(i));
    cum[i] = acc.value();
  }
  cum.back() = 1.0;

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out;
  out.reserve(n * dist.dim());
  for (std::size_t j = 0; j < n; ++j) {
    const double u = unif(rng);
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cum.begin());
    if (idx >= dist.size()) idx = dist.size() - 1;
    auto a = dist.atom(idx);
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

SupportExtremes support_extremes(const DiscreteDistribution& dist) {
  SupportExtremes ex;
  ex.min.assign(dist.dim(), 0.0);
  ex.max.assign(dist.dim(), 0.0);
  bool seen = false;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!(dist.prob(i) > 0.0)) continue;
    auto a = dist.atom(i);
    if (!seen) {
      for (std::size_t j = 0; j < dist.dim(); ++j) ex.min[j] = ex.max[j] = a[j];
      seen = true;
    } else {
      for (std::size_t j = 0; j < dist.dim(); ++j) {
        ex.min[j] = std::min(ex.min[j], a[j]);
        ex.max[j] = std::max(ex.max[j], a[j]);
      }
    }
  }
  if (!seen) throw DomainError("support_extremes: no atom carries positive probability");
  return ex;
}

SampleSet read_samples_csv(std::istream& in) {
  SampleSet out;
  out.dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') continue;

    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string field =
          line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        double x = std::stod(field, &used);
        while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
        if (used != field.size()) throw std::invalid_argument(field);
        row.push_back(x);
      } catch (const std::exception&) {
        throw ParseError("read_samples_csv: malformed field '" + field + "'", lineno);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (out.dim == 0) {
      out.dim = row.size();
    } else if (row.size() != out.dim) {
      throw ParseError("read_samples_csv: row has " + std::to_string(row.size()) +
                           " fields, expected " + std::to_string(out.dim),
                       lineno);
    }
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  if (out.values.empty()) throw DomainError("read_samples_csv: no samples found");
  return out;
}

}  // namespace kelly
