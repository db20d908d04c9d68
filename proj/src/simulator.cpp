#include "kelly/simulator.hpp"

#include <cmath>
#include <limits>

#include "kelly/compensated.hpp"
#include "kelly/errors.hpp"
#include "kelly/growth.hpp"
#include "json.hpp"

namespace kelly {

double WealthPath::realized_growth() const {
  const std::size_t n = values.size() - 1;
  if (n == 0) return 0.0;
  if (values.back() <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(values.back() / values.front()) / static_cast<double>(n);
}

WealthPath wealth_path(std::span<const double> returns, std::size_t dim,
                       const FractionVector& k, double v0) {
  if (dim == 0 || k.dim() != dim)
    throw DimensionError("wealth_path: fraction dim does not match return dim");
  if (returns.size() % dim != 0)
    throw DimensionError("wealth_path: return data is not a multiple of dim");
  if (!(v0 > 0.0)) throw DomainError("wealth_path: initial wealth must be positive");

  const std::size_t steps = returns.size() / dim;
  WealthPath path;
  path.values.reserve(steps + 1);
  path.values.push_back(v0);
  double v = v0;
  for (std::size_t j = 0; j < steps; ++j) {
    if (v == 0.0) {
      path.values.push_back(0.0);  // absorbed
      continue;
    }
    const double mult = 1.0 + dot(k.values(), returns.subspan(j * dim, dim));
    if (mult < 0.0)
      throw SurvivalError("wealth_path: negative wealth multiplier breaches survival", j);
    v *= mult;
    if (mult == 0.0) {
      v = 0.0;
      path.ruined = true;
    }
    path.values.push_back(v);
  }
  return path;
}

std::string to_json(const ComparisonReport& r) {
  nlohmann::json j;
  j["k_theory"] = r.k_theory;
  j["k_empirical"] = r.k_empirical;
  j["m"] = r.m;
  auto growth = [](double g) -> nlohmann::json {
    if (std::isinf(g) && g < 0.0) return "-inf";
    return g;
  };
  j["realized_growth_theory"] = growth(r.realized_growth_theory);
  j["realized_growth_empirical"] = growth(r.realized_growth_empirical);
  j["bad_sample_seen"] = r.bad_sample_seen;
  return j.dump();
}

namespace {

std::vector<double> draw_returns(const ModelSpec& spec, std::size_t n, Rng& rng) {
  if (const auto* normal = std::get_if<NormalReturns>(&spec)) {
    std::normal_distribution<double> dist(normal->mu, normal->sigma);
    std::vector<double> out(n);
    for (double& x : out) x = dist(rng);
    return out;
  }
  const DiscreteDistribution dist = from_spec(spec);
  return sample_atoms(dist, n, rng);
}

// (1/N)*log(V(N)/V(0)) evaluated as the compensated mean of log multipliers,
// which cannot overflow however long the path compounds. Same ruin and
// survival semantics as wealth_path.
double realized_log_growth(std::span<const double> future, double k) {
  CompensatedSum acc;
  for (std::size_t j = 0; j < future.size(); ++j) {
    const double mult = 1.0 + k * future[j];
    if (mult < 0.0)
      throw SurvivalError("run_comparison: negative wealth multiplier breaches survival", j);
    if (mult == 0.0) return -std::numeric_limits<double>::infinity();
    acc.add(std::log(mult));
  }
  return acc.value() / static_cast<double>(future.size());
}

}  // namespace

ComparisonReport run_comparison(const ModelSpec& spec, std::size_t m, std::size_t n_future,
                                std::uint64_t seed, const OptimizerConfig& cfg) {
  if (m < 1) throw DomainError("run_comparison: need at least one estimation sample");
  if (n_future < 1) throw DomainError("run_comparison: need at least one future bet");
  validate(spec);

  Rng rng = make_rng(seed);
  const std::vector<double> estimation = draw_returns(spec, m, rng);

  SampleSet samples;
  samples.values = estimation;
  samples.dim = 1;
  samples.seed = seed;
  const DiscreteDistribution empirical = empirical_from_samples(samples);

  ComparisonReport report;
  report.m = m;
  report.k_theory = theoretical_kelly(spec, cfg).k_star.scalar();
  report.k_empirical = optimize_scalar(empirical, cfg).k_star.scalar();

  if (const auto* toy = std::get_if<ToyBernoulli>(&spec)) {
    for (double x : estimation) {
      if (x == -toy->x0) {
        report.bad_sample_seen = true;
        break;
      }
    }
  }

  // Both bettors face the identical future returns; only the fraction differs.
  const std::vector<double> future = draw_returns(spec, n_future, rng);
  report.realized_growth_theory = realized_log_growth(future, report.k_theory);
  report.realized_growth_empirical = realized_log_growth(future, report.k_empirical);
  return report;
}

std::vector<std::pair<double, double>> sweep_kelly_vs_mu(std::span<const double> mu_grid,
                                                         double sigma, std::size_t m,
                                                         std::uint64_t seed,
                                                         const OptimizerConfig& cfg) {
  if (!(sigma > 0.0)) throw DomainError("sweep_kelly_vs_mu: sigma must be positive");
  if (m < 1) throw DomainError("sweep_kelly_vs_mu: need at least one sample");

  const SampleSet noise = gaussian_samples(0.0, 1.0, m, seed);

  std::vector<std::pair<double, double>> out;
  out.reserve(mu_grid.size());
  SampleSet shifted;
  shifted.dim = 1;
  shifted.seed = seed;
  shifted.values.resize(m);
  for (double mu : mu_grid) {
    for (std::size_t i = 0; i < m; ++i) shifted.values[i] = mu + sigma * noise.values[i];
    const DiscreteDistribution empirical = empirical_from_samples(shifted);
    out.emplace_back(mu, optimize_scalar(empirical, cfg).k_star.scalar());
  }
  return out;
}

}  // namespace kelly
