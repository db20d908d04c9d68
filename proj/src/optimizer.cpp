#include "kelly/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kelly/errors.hpp"
#include "json.hpp"

namespace kelly {

const char* to_string(ActiveBound b) noexcept {
  switch (b) {
    case ActiveBound::cap: return "cap";
    case ActiveBound::survival: return "survival";
    default: return "interior";
  }
}

void OptimizerConfig::validate() const {
  if (!(cap > 0.0)) throw DomainError("OptimizerConfig: cap must be positive");
  if (!(tol_k > 0.0)) throw DomainError("OptimizerConfig: tol_k must be positive");
  if (!(tol_g > 0.0)) throw DomainError("OptimizerConfig: tol_g must be positive");
  if (max_iterations < 1) throw DomainError("OptimizerConfig: max_iterations must be >= 1");
}

std::string to_json(const OptimizationResult& result) {
  nlohmann::json j;
  j["k_star"] = std::vector<double>(result.k_star.values().begin(), result.k_star.values().end());
  if (result.g_star.is_finite())
    j["g_star"] = result.g_star.value();
  else
    j["g_star"] = "-inf";
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["active_bound"] = to_string(result.active_bound);
  if (!result.rationale.empty()) j["rationale"] = result.rationale;
  return j.dump();
}

namespace {

struct ScalarBoundKinds {
  bool lower_is_survival;
  bool upper_is_survival;
};

ScalarBoundKinds scalar_bound_kinds(const DiscreteDistribution& dist, double cap) {
  const SupportExtremes ex = support_extremes(dist);
  // Ties between survival and cap classify as survival: the survival wall is
  // the one the growth objective actually diverges on.
  return {ex.max[0] > 0.0 && -1.0 / ex.max[0] >= -cap,
          ex.min[0] < 0.0 && -1.0 / ex.min[0] <= cap};
}

ActiveBound classify_scalar(double k, const ClosedInterval& iv, const ScalarBoundKinds& kinds,
                            double tol) {
  if (std::abs(k - iv.lo) <= tol) return kinds.lower_is_survival ? ActiveBound::survival : ActiveBound::cap;
  if (std::abs(k - iv.hi) <= tol) return kinds.upper_is_survival ? ActiveBound::survival : ActiveBound::cap;
  return ActiveBound::interior;
}

}  // namespace

OptimizationResult optimize_scalar(const DiscreteDistribution& dist, const OptimizerConfig& cfg) {
  cfg.validate();
  if (dist.dim() != 1)
    throw DimensionError("optimize_scalar: distribution must be one-dimensional");

  const ClosedInterval iv = feasible_interval(dist, cfg.cap);
  const ScalarBoundKinds kinds = scalar_bound_kinds(dist, cfg.cap);

  if (!(iv.width() > 0.0)) {
    // Degenerate interval: no bet is the only admissible bet.
    return {FractionVector(0.0), ExtendedReal(0.0), 0, true, ActiveBound::survival, ""};
  }

  auto eval = [&](double k) { return log_growth(dist, FractionVector(k)); };

  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = iv.lo;
  double hi = iv.hi;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  ExtendedReal fc = eval(c);
  ExtendedReal fd = eval(d);

  std::size_t iters = 0;
  bool converged = false;
  while (iters < cfg.max_iterations) {
    if (hi - lo <= cfg.tol_k) {
      converged = true;
      break;
    }
    ++iters;
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = eval(c);
    } else if (fd > fc) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = eval(d);
    } else {
      // Exact tie: for a unimodal objective the maximum lies in [c, d].
      lo = c;
      hi = d;
      c = hi - invphi * (hi - lo);
      d = lo + invphi * (hi - lo);
      fc = eval(c);
      fd = eval(d);
    }
  }

  // Candidate sweep. Endpoints are included so a cap-bound optimum reports
  // the exact bound; survival endpoints evaluate to minus infinity and never
  // win. k = 0 is always admissible with g = 0, which realizes both the
  // never-worse-than-not-betting guarantee and the small-|k| tie rule.
  double best_k = 0.0;
  ExtendedReal best_g = 0.0;
  for (double k : {(lo + hi) / 2.0, lo, hi, 0.0}) {
    if (!iv.contains(k)) continue;
    const ExtendedReal g = eval(k);
    if (g > best_g || (g == best_g && std::abs(k) < std::abs(best_k))) {
      best_k = k;
      best_g = g;
    }
  }

  const double edge_tol = std::max(4.0 * cfg.tol_k, 1e-12);
  return {FractionVector(best_k), best_g, iters, converged,
          classify_scalar(best_k, iv, kinds, edge_tol), ""};
}

namespace {

// Dense Cholesky solve of H * x = b for small symmetric positive definite H
// (row-major). Returns false when H is not numerically SPD.
bool cholesky_solve(std::vector<double> h, std::span<const double> b, std::size_t n,
                    std::vector<double>& x) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = h[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= h[j * n + k] * h[j * n + k];
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double l = std::sqrt(diag);
    h[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = h[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= h[i * n + k] * h[j * n + k];
      h[i * n + j] = v / l;
    }
  }
  x.assign(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= h[i * n + k] * x[k];
    x[i] /= h[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= h[k * n + ii] * x[k];
    x[ii] /= h[ii * n + ii];
  }
  return true;
}

std::vector<double> projected_ascent_direction(std::span<const double> k,
                                               std::span<const double> grad, double cap) {
  std::vector<double> pg(grad.begin(), grad.end());
  for (std::size_t j = 0; j < k.size(); ++j) {
    if ((k[j] >= cap && grad[j] > 0.0) || (k[j] <= -cap && grad[j] < 0.0)) pg[j] = 0.0;
  }
  return pg;
}

// Newton refinement on the free coordinates; pinned box coordinates stay put.
// Safeguarded: steps that lose growth or leave the survival interior are
// halved away.
std::size_t newton_polish(const DiscreteDistribution& dist, std::vector<double>& k, double cap,
                          double grad_stop) {
  const std::size_t d = dist.dim();
  if (d > 64) return 0;
  std::size_t rounds = 0;
  double gk = log_growth(dist, FractionVector(k)).value();
  for (; rounds < 25; ++rounds) {
    const std::vector<double> grad = log_growth_gradient(dist, FractionVector(k));
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < d; ++j) {
      const bool pinned = (k[j] >= cap && grad[j] > 0.0) || (k[j] <= -cap && grad[j] < 0.0);
      if (!pinned) free.push_back(j);
    }
    if (free.empty()) break;
    double pgnorm = 0.0;
    for (std::size_t j : free) pgnorm += grad[j] * grad[j];
    pgnorm = std::sqrt(pgnorm);
    if (pgnorm <= grad_stop) break;

    const std::size_t n = free.size();
    std::vector<double> h(n * n, 0.0);
    std::vector<double> b(n);
    for (std::size_t a = 0; a < n; ++a) b[a] = grad[free[a]];
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const double p = dist.prob(i);
      if (!(p > 0.0)) continue;
      const auto x = dist.atom(i);
      const double s = dot(k, x);
      const double w = p / ((1.0 + s) * (1.0 + s));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb <= a; ++bb) h[a * n + bb] += w * x[free[a]] * x[free[bb]];
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t bb = a + 1; bb < n; ++bb) h[a * n + bb] = h[bb * n + a];

    std::vector<double> delta;
    if (!cholesky_solve(std::move(h), b, n, delta)) break;

    bool moved = false;
    double alpha = 1.0;
    for (int bt = 0; bt < 60; ++bt, alpha *= 0.5) {
      std::vector<double> cand = k;
      for (std::size_t a = 0; a < n; ++a)
        cand[free[a]] = std::clamp(k[free[a]] + alpha * delta[a], -cap, cap);
      const ExtendedReal gc = log_growth(dist, FractionVector(cand));
      if (gc.is_finite() && gc.value() >= gk) {
        if (cand == k) break;
        k = std::move(cand);
        gk = gc.value();
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return rounds;
}

}  // namespace

OptimizationResult optimize_vector(const DiscreteDistribution& dist, const OptimizerConfig& cfg) {
  cfg.validate();
  const std::size_t d = dist.dim();
  const double cap = cfg.cap;

  std::vector<double> k(d, 0.0);
  double gk = 0.0;
  std::vector<double> grad = log_growth_gradient(dist, FractionVector(k));
  const double grad_stop = 1e-9 * (1.0 + norm2(grad));

  std::size_t it = 0;
  bool converged = false;
  while (it < cfg.max_iterations) {
    const std::vector<double> pg = projected_ascent_direction(k, grad, cap);
    if (norm2(pg) <= grad_stop) {
      converged = true;
      break;
    }
    ++it;

    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> cand(d);
    double gc = 0.0;
    double step_norm = 0.0;
    for (int bt = 0; bt < 80; ++bt, alpha *= 0.5) {
      double progress = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        cand[j] = std::clamp(k[j] + alpha * grad[j], -cap, cap);
        progress += grad[j] * (cand[j] - k[j]);
      }
      if (!(progress > 0.0)) continue;
      const ExtendedReal g = log_growth(dist, FractionVector(cand));
      // A step into the minus-infinity region is just a failed Armijo test.
      if (g.is_finite() && g.value() >= gk + 1e-4 * progress) {
        accepted = true;
        gc = g.value();
        step_norm = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double s = cand[j] - k[j];
          step_norm += s * s;
        }
        step_norm = std::sqrt(step_norm);
        break;
      }
    }
    if (!accepted) {
      converged = true;  // no improving step representable
      break;
    }

    const double improvement = gc - gk;
    k = cand;
    gk = gc;
    grad = log_growth_gradient(dist, FractionVector(k));
    if (step_norm < cfg.tol_k || improvement < cfg.tol_g) {
      converged = true;
      break;
    }
  }
  if (converged) it += newton_polish(dist, k, cap, grad_stop);

  const ExtendedReal g_star = log_growth(dist, FractionVector(k));
  grad = log_growth_gradient(dist, FractionVector(k));
  ActiveBound bound = ActiveBound::interior;
  double min_mult = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!(dist.prob(i) > 0.0)) continue;
    min_mult = std::min(min_mult, 1.0 + dot(k, dist.atom(i)));
  }
  if (min_mult <= 1e-9) {
    bound = ActiveBound::survival;  // pressed against the survival wall
  } else {
    for (std::size_t j = 0; j < d; ++j) {
      if ((k[j] >= cap && grad[j] > 0.0) || (k[j] <= -cap && grad[j] < 0.0)) {
        bound = ActiveBound::cap;
        break;
      }
    }
  }
  return {FractionVector(std::move(k)), g_star, it, converged, bound, ""};
}

double coin_closed_form(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("coin_closed_form: p must lie in [0, 1]");
  return 2.0 * p - 1.0;
}

double empirical_coin_fraction(double p_hat) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0))
    throw DomainError("empirical_coin_fraction: p_hat must lie in [0, 1]");
  return std::max(2.0 * p_hat - 1.0, 0.0);
}

double toy_closed_form(double epsilon, double x0) {
  validate(ModelSpec(ToyBernoulli{epsilon, x0}));
  return (1.0 - epsilon * (1.0 + x0)) / x0;
}

double p_bad(double epsilon, std::uint64_t sample_budget) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("p_bad: epsilon must lie in [0, 1]");
  if (sample_budget == 0) return 0.0;
  if (epsilon == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(sample_budget) * std::log1p(-epsilon));
}

double merton_fraction(double mu_hat, double sigma_hat) {
  if (!(sigma_hat > 0.0)) throw DomainError("merton_fraction: sigma_hat must be positive");
  return mu_hat / (sigma_hat * sigma_hat);
}

OptimizationResult theoretical_kelly(const ModelSpec& spec, const OptimizerConfig& cfg) {
  cfg.validate();
  validate(spec);
  return std::visit(
      [&](const auto& s) -> OptimizationResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NormalReturns>) {
          // Two-sided unbounded support confines the fraction to {0} no
          // matter how favorable mu/sigma looks.
          return {FractionVector(0.0), ExtendedReal(0.0), 0, true, ActiveBound::survival,
                  "unbounded support"};
        } else if constexpr (std::is_same_v<T, BernoulliCoin>) {
          const double raw = coin_closed_form(s.p);
          const double k = std::clamp(raw, -cfg.cap, cfg.cap);
          const DiscreteDistribution dist = from_spec(s);
          return {FractionVector(k), log_growth(dist, FractionVector(k)), 0, true,
                  k == raw ? ActiveBound::interior : ActiveBound::cap, "closed form"};
        } else if constexpr (std::is_same_v<T, ToyBernoulli>) {
          const double raw = toy_closed_form(s.epsilon, s.x0);
          const double k = std::clamp(raw, -cfg.cap, cfg.cap);
          const DiscreteDistribution dist = from_spec(s);
          return {FractionVector(k), log_growth(dist, FractionVector(k)), 0, true,
                  k == raw ? ActiveBound::interior : ActiveBound::cap, "closed form"};
        } else {
          return optimize_scalar(from_spec(s), cfg);
        }
      },
      spec);
}

}  // namespace kelly
