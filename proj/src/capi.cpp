// C binding over the C++ core. Every entry point catches, records the message
// in a thread-local slot and maps the exception type to a status code; no
// exception crosses the boundary.

#include "kelly.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kelly/constraints.hpp"
#include "kelly/distribution.hpp"
#include "kelly/errors.hpp"
#include "kelly/growth.hpp"
#include "kelly/ingest.hpp"
#include "kelly/optimizer.hpp"
#include "kelly/simulator.hpp"

struct kelly_dist {
  kelly::DiscreteDistribution value;
};

struct kelly_set {
  kelly::SupportSet value;
};

struct kelly_result {
  kelly::OptimizationResult value;
};

struct kelly_ticks {
  kelly::TickSeries value;
};

namespace {

thread_local std::string t_last_error;

kelly_status record(kelly_status code, const char* what) {
  t_last_error = what ? what : "";
  return code;
}

// Runs the body and translates exceptions. The body returns void; successful
// calls leave the previous error message untouched.
template <typename Fn>
kelly_status guarded(Fn&& fn) {
  try {
    fn();
    return KELLY_OK;
  } catch (const kelly::DimensionError& e) {
    return record(KELLY_ERR_DIMENSION, e.what());
  } catch (const kelly::ParseError& e) {
    return record(KELLY_ERR_PARSE, e.what());
  } catch (const kelly::BoundaryError& e) {
    return record(KELLY_ERR_BOUNDARY, e.what());
  } catch (const kelly::SurvivalError& e) {
    return record(KELLY_ERR_SURVIVAL, e.what());
  } catch (const kelly::DomainError& e) {
    return record(KELLY_ERR_DOMAIN, e.what());
  } catch (const kelly::Error& e) {
    return record(KELLY_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return record(KELLY_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(KELLY_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw kelly::DomainError(what);
}

kelly::ModelSpec to_spec(const kelly_model* model) {
  require(model != nullptr, "model must not be null");
  switch (model->kind) {
    case KELLY_MODEL_COIN:
      return kelly::BernoulliCoin{model->p};
    case KELLY_MODEL_TOY:
      return kelly::ToyBernoulli{model->epsilon, model->x0};
    case KELLY_MODEL_NORMAL:
      return kelly::NormalReturns{model->mu, model->sigma};
    case KELLY_MODEL_PATHOLOGICAL:
      return kelly::Pathological{model->k_ref,
                                 static_cast<std::size_t>(model->n_terms)};
  }
  throw kelly::DomainError("unknown model kind");
}

kelly::OptimizerConfig to_config(const kelly_config* cfg) {
  kelly::OptimizerConfig out;
  if (cfg != nullptr) {
    out.cap = cfg->cap;
    out.tol_k = cfg->tol_k;
    out.tol_g = cfg->tol_g;
    out.max_iterations = static_cast<std::size_t>(cfg->max_iterations);
  }
  return out;
}

kelly::FractionVector to_fraction(const double* k, std::size_t dim) {
  require(k != nullptr, "k must not be null");
  require(dim > 0, "dim must be positive");
  return kelly::FractionVector(std::vector<double>(k, k + dim));
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* kelly_last_error(void) { return t_last_error.c_str(); }

void kelly_string_free(char* s) { delete[] s; }

/* ------------------------------------------------------------------ */
/* Distributions                                                      */
/* ------------------------------------------------------------------ */

kelly_status kelly_dist_from_samples(const double* samples, size_t count, size_t dim,
                                     kelly_dist** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(samples != nullptr, "samples must not be null");
    require(dim > 0, "dim must be positive");
    kelly::SampleSet set{std::vector<double>(samples, samples + count * dim), dim, {}};
    *out = new kelly_dist{kelly::empirical_from_samples(set)};
  });
}

kelly_status kelly_dist_from_samples_csv(const char* path, kelly_dist** out,
                                         size_t* sample_count_out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(path != nullptr, "path must not be null");
    std::ifstream in(path);
    if (!in) throw kelly::DomainError(std::string("cannot open ") + path);
    kelly::SampleSet set = kelly::read_samples_csv(in);
    if (sample_count_out != nullptr) *sample_count_out = set.count();
    *out = new kelly_dist{kelly::empirical_from_samples(set)};
  });
}

kelly_status kelly_dist_from_model(const kelly_model* model, kelly_dist** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new kelly_dist{kelly::from_spec(to_spec(model))};
  });
}

size_t kelly_dist_dim(const kelly_dist* dist) {
  return dist == nullptr ? 0 : dist->value.dim();
}

size_t kelly_dist_size(const kelly_dist* dist) {
  return dist == nullptr ? 0 : dist->value.size();
}

kelly_status kelly_dist_atom(const kelly_dist* dist, size_t i, double* point_out,
                             double* prob_out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(i < dist->value.size(), "atom index out of range");
    if (point_out != nullptr) {
      auto atom = dist->value.atom(i);
      std::memcpy(point_out, atom.data(), atom.size() * sizeof(double));
    }
    if (prob_out != nullptr) *prob_out = dist->value.prob(i);
  });
}

kelly_status kelly_dist_support_extremes(const kelly_dist* dist, double* min_out,
                                         double* max_out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(min_out != nullptr && max_out != nullptr, "outputs must not be null");
    kelly::SupportExtremes ext = kelly::support_extremes(dist->value);
    std::memcpy(min_out, ext.min.data(), ext.min.size() * sizeof(double));
    std::memcpy(max_out, ext.max.data(), ext.max.size() * sizeof(double));
  });
}

void kelly_dist_free(kelly_dist* dist) { delete dist; }

kelly_status kelly_gaussian_samples(double mu, double sigma, size_t m, uint64_t seed,
                                    double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    kelly::SampleSet set = kelly::gaussian_samples(mu, sigma, m, seed);
    std::memcpy(out, set.values.data(), set.values.size() * sizeof(double));
  });
}

/* ------------------------------------------------------------------ */
/* Growth objective                                                   */
/* ------------------------------------------------------------------ */

kelly_status kelly_log_growth(const kelly_dist* dist, const double* k, size_t dim,
                              double* out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(out != nullptr, "out must not be null");
    *out = kelly::log_growth(dist->value, to_fraction(k, dim)).as_double();
  });
}

kelly_status kelly_log_growth_gradient(const kelly_dist* dist, const double* k, size_t dim,
                                       double* grad_out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(grad_out != nullptr, "grad_out must not be null");
    std::vector<double> grad = kelly::log_growth_gradient(dist->value, to_fraction(k, dim));
    std::memcpy(grad_out, grad.data(), grad.size() * sizeof(double));
  });
}

kelly_status kelly_feasible_interval(const kelly_dist* dist, double cap, double* lo_out,
                                     double* hi_out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(lo_out != nullptr && hi_out != nullptr, "outputs must not be null");
    kelly::ClosedInterval iv = kelly::feasible_interval(dist->value, cap);
    *lo_out = iv.lo;
    *hi_out = iv.hi;
  });
}

/* ------------------------------------------------------------------ */
/* Support sets                                                       */
/* ------------------------------------------------------------------ */

kelly_status kelly_set_interval(double lo, double hi, kelly_set** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new kelly_set{kelly::SupportSet(kelly::ClosedInterval{lo, hi})};
  });
}

kelly_status kelly_set_hypercube(const double* center, const double* half_widths, size_t dim,
                                 kelly_set** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(center != nullptr && half_widths != nullptr, "inputs must not be null");
    require(dim > 0, "dim must be positive");
    *out = new kelly_set{kelly::SupportSet(
        kelly::Hypercube{std::vector<double>(center, center + dim),
                         std::vector<double>(half_widths, half_widths + dim)})};
  });
}

kelly_status kelly_set_hypersphere(const double* center, size_t dim, double radius,
                                   kelly_set** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(center != nullptr, "center must not be null");
    require(dim > 0, "dim must be positive");
    *out = new kelly_set{kelly::SupportSet(
        kelly::Hypersphere{std::vector<double>(center, center + dim), radius})};
  });
}

kelly_status kelly_set_atom_hull(const double* points, size_t count, size_t dim,
                                 kelly_set** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(points != nullptr, "points must not be null");
    require(dim > 0, "dim must be positive");
    *out = new kelly_set{kelly::SupportSet(
        kelly::AtomHull(std::vector<double>(points, points + count * dim), dim))};
  });
}

size_t kelly_set_dim(const kelly_set* set) {
  return set == nullptr ? 0 : set->value.dim();
}

void kelly_set_free(kelly_set* set) { delete set; }

kelly_status kelly_support_function(const kelly_set* set, const double* y, size_t dim,
                                    double* out) {
  return guarded([&] {
    require(set != nullptr, "set must not be null");
    require(y != nullptr, "y must not be null");
    require(out != nullptr, "out must not be null");
    *out = kelly::support_function(set->value, std::span<const double>(y, dim));
  });
}

kelly_status kelly_set_feasible(const kelly_set* set, const double* k, size_t dim, int* out) {
  return guarded([&] {
    require(set != nullptr, "set must not be null");
    require(out != nullptr, "out must not be null");
    *out = kelly::kelly_feasible(set->value, to_fraction(k, dim)) ? 1 : 0;
  });
}

kelly_status kelly_confinement_interval(double x_min, double x_max, double* lo_out,
                                        double* hi_out) {
  return guarded([&] {
    require(lo_out != nullptr && hi_out != nullptr, "outputs must not be null");
    kelly::ClosedInterval iv = kelly::confinement_interval(x_min, x_max);
    *lo_out = iv.lo;
    *hi_out = iv.hi;
  });
}

kelly_status kelly_sphere_boundary(const double* x0, double r, size_t n_points,
                                   double* theta_out, double* k_out) {
  return guarded([&] {
    require(x0 != nullptr, "x0 must not be null");
    auto pts = kelly::sphere_constraint_boundary({x0[0], x0[1]}, r, n_points);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (theta_out != nullptr) theta_out[i] = pts[i].theta;
      if (k_out != nullptr) {
        k_out[2 * i] = pts[i].k[0];
        k_out[2 * i + 1] = pts[i].k[1];
      }
    }
  });
}

/* ------------------------------------------------------------------ */
/* Optimizer                                                          */
/* ------------------------------------------------------------------ */

void kelly_config_default(kelly_config* cfg) {
  if (cfg == nullptr) return;
  kelly::OptimizerConfig defaults;
  cfg->cap = defaults.cap;
  cfg->tol_k = defaults.tol_k;
  cfg->tol_g = defaults.tol_g;
  cfg->max_iterations = defaults.max_iterations;
}

kelly_status kelly_optimize_scalar(const kelly_dist* dist, const kelly_config* cfg,
                                   kelly_result** out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(out != nullptr, "out must not be null");
    *out = new kelly_result{kelly::optimize_scalar(dist->value, to_config(cfg))};
  });
}

kelly_status kelly_optimize_vector(const kelly_dist* dist, const kelly_config* cfg,
                                   kelly_result** out) {
  return guarded([&] {
    require(dist != nullptr, "dist must not be null");
    require(out != nullptr, "out must not be null");
    *out = new kelly_result{kelly::optimize_vector(dist->value, to_config(cfg))};
  });
}

kelly_status kelly_theoretical(const kelly_model* model, const kelly_config* cfg,
                               kelly_result** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new kelly_result{kelly::theoretical_kelly(to_spec(model), to_config(cfg))};
  });
}

size_t kelly_result_dim(const kelly_result* result) {
  return result == nullptr ? 0 : result->value.k_star.dim();
}

kelly_status kelly_result_k(const kelly_result* result, double* k_out) {
  return guarded([&] {
    require(result != nullptr, "result must not be null");
    require(k_out != nullptr, "k_out must not be null");
    auto values = result->value.k_star.values();
    std::memcpy(k_out, values.data(), values.size() * sizeof(double));
  });
}

double kelly_result_growth(const kelly_result* result) {
  if (result == nullptr) return -std::numeric_limits<double>::infinity();
  return result->value.g_star.as_double();
}

uint64_t kelly_result_iterations(const kelly_result* result) {
  return result == nullptr ? 0 : result->value.iterations;
}

int kelly_result_converged(const kelly_result* result) {
  return result != nullptr && result->value.converged ? 1 : 0;
}

kelly_active_bound kelly_result_active_bound(const kelly_result* result) {
  if (result == nullptr) return KELLY_BOUND_INTERIOR;
  switch (result->value.active_bound) {
    case kelly::ActiveBound::cap:
      return KELLY_BOUND_CAP;
    case kelly::ActiveBound::survival:
      return KELLY_BOUND_SURVIVAL;
    case kelly::ActiveBound::interior:
      break;
  }
  return KELLY_BOUND_INTERIOR;
}

const char* kelly_result_rationale(const kelly_result* result) {
  return result == nullptr ? "" : result->value.rationale.c_str();
}

char* kelly_result_to_json(const kelly_result* result) {
  if (result == nullptr) return nullptr;
  return copy_string(kelly::to_json(result->value));
}

void kelly_result_free(kelly_result* result) { delete result; }

kelly_status kelly_coin_fraction(double p, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = kelly::coin_closed_form(p);
  });
}

kelly_status kelly_empirical_coin_fraction(double p_hat, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = kelly::empirical_coin_fraction(p_hat);
  });
}

kelly_status kelly_toy_fraction(double epsilon, double x0, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = kelly::toy_closed_form(epsilon, x0);
  });
}

kelly_status kelly_p_bad(double epsilon, uint64_t sample_budget, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = kelly::p_bad(epsilon, sample_budget);
  });
}

kelly_status kelly_merton_fraction(double mu_hat, double sigma_hat, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = kelly::merton_fraction(mu_hat, sigma_hat);
  });
}

/* ------------------------------------------------------------------ */
/* Simulation                                                         */
/* ------------------------------------------------------------------ */

kelly_status kelly_wealth_path(const double* returns, size_t steps, size_t dim,
                               const double* k, double v0, double* values_out,
                               int* ruined_out, size_t* violation_step_out) {
  try {
    require(returns != nullptr || steps == 0, "returns must not be null");
    require(values_out != nullptr, "values_out must not be null");
    kelly::WealthPath path =
        kelly::wealth_path(std::span<const double>(returns, steps * dim), dim,
                           to_fraction(k, dim), v0);
    std::memcpy(values_out, path.values.data(), path.values.size() * sizeof(double));
    if (ruined_out != nullptr) *ruined_out = path.ruined ? 1 : 0;
    return KELLY_OK;
  } catch (const kelly::SurvivalError& e) {
    if (violation_step_out != nullptr) *violation_step_out = e.step();
    return record(KELLY_ERR_SURVIVAL, e.what());
  } catch (const kelly::DimensionError& e) {
    return record(KELLY_ERR_DIMENSION, e.what());
  } catch (const kelly::DomainError& e) {
    return record(KELLY_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return record(KELLY_ERR_INTERNAL, e.what());
  }
}

kelly_status kelly_run_comparison(const kelly_model* model, size_t m, size_t n_future,
                                  uint64_t seed, const kelly_config* cfg,
                                  kelly_comparison* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    kelly::ComparisonReport report =
        kelly::run_comparison(to_spec(model), m, n_future, seed, to_config(cfg));
    out->k_theory = report.k_theory;
    out->k_empirical = report.k_empirical;
    out->m = report.m;
    out->realized_growth_theory = report.realized_growth_theory;
    out->realized_growth_empirical = report.realized_growth_empirical;
    out->bad_sample_seen = report.bad_sample_seen ? 1 : 0;
  });
}

char* kelly_comparison_to_json(const kelly_comparison* report) {
  if (report == nullptr) return nullptr;
  kelly::ComparisonReport cpp;
  cpp.k_theory = report->k_theory;
  cpp.k_empirical = report->k_empirical;
  cpp.m = static_cast<std::size_t>(report->m);
  cpp.realized_growth_theory = report->realized_growth_theory;
  cpp.realized_growth_empirical = report->realized_growth_empirical;
  cpp.bad_sample_seen = report->bad_sample_seen != 0;
  return copy_string(kelly::to_json(cpp));
}

kelly_status kelly_sweep_mu(const double* mu_grid, size_t n_mu, double sigma, size_t m,
                            uint64_t seed, const kelly_config* cfg, double* k_hat_out) {
  return guarded([&] {
    require(mu_grid != nullptr, "mu_grid must not be null");
    require(k_hat_out != nullptr, "k_hat_out must not be null");
    auto curve = kelly::sweep_kelly_vs_mu(std::span<const double>(mu_grid, n_mu), sigma, m,
                                          seed, to_config(cfg));
    for (std::size_t i = 0; i < curve.size(); ++i) k_hat_out[i] = curve[i].second;
  });
}

/* ------------------------------------------------------------------ */
/* Tick ingestion                                                     */
/* ------------------------------------------------------------------ */

kelly_status kelly_ticks_read_csv(const char* path, kelly_ticks** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(path != nullptr, "path must not be null");
    *out = new kelly_ticks{kelly::read_prices_csv_file(path)};
  });
}

kelly_status kelly_ticks_parse_csv(const char* data, size_t len, kelly_ticks** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(data != nullptr, "data must not be null");
    std::istringstream in(std::string(data, len));
    *out = new kelly_ticks{kelly::read_prices_csv(in)};
  });
}

kelly_status kelly_ticks_gbm(double s0, double mu_tick, double sigma_tick, size_t m,
                             uint64_t seed, kelly_ticks** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new kelly_ticks{kelly::gbm_ticks(s0, mu_tick, sigma_tick, m, seed)};
  });
}

size_t kelly_ticks_size(const kelly_ticks* ticks) {
  return ticks == nullptr ? 0 : ticks->value.prices.size();
}

kelly_status kelly_ticks_price(const kelly_ticks* ticks, size_t i, double* out) {
  return guarded([&] {
    require(ticks != nullptr, "ticks must not be null");
    require(out != nullptr, "out must not be null");
    require(i < ticks->value.prices.size(), "price index out of range");
    *out = ticks->value.prices[i];
  });
}

kelly_status kelly_ticks_returns(const kelly_ticks* ticks, double* out) {
  return guarded([&] {
    require(ticks != nullptr, "ticks must not be null");
    require(out != nullptr, "out must not be null");
    std::vector<double> returns = kelly::returns_from_prices(ticks->value);
    std::memcpy(out, returns.data(), returns.size() * sizeof(double));
  });
}

void kelly_ticks_free(kelly_ticks* ticks) { delete ticks; }

kelly_status kelly_return_stats(const double* returns, size_t n, kelly_stats* out) {
  return guarded([&] {
    require(returns != nullptr, "returns must not be null");
    require(out != nullptr, "out must not be null");
    kelly::ReturnStats stats = kelly::summary_stats(std::span<const double>(returns, n));
    out->mu_hat = stats.mu_hat;
    out->sigma_hat = stats.sigma_hat;
    out->x_min = stats.x_min;
    out->x_max = stats.x_max;
    out->m = stats.m;
    out->has_confinement = stats.confinement.has_value() ? 1 : 0;
    out->confine_lo = stats.confinement ? stats.confinement->lo : 0.0;
    out->confine_hi = stats.confinement ? stats.confinement->hi : 0.0;
  });
}

char* kelly_stats_to_json(const kelly_stats* stats) {
  if (stats == nullptr) return nullptr;
  kelly::ReturnStats cpp;
  cpp.mu_hat = stats->mu_hat;
  cpp.sigma_hat = stats->sigma_hat;
  cpp.x_min = stats->x_min;
  cpp.x_max = stats->x_max;
  cpp.m = static_cast<std::size_t>(stats->m);
  if (stats->has_confinement)
    cpp.confinement = kelly::ClosedInterval{stats->confine_lo, stats->confine_hi};
  return copy_string(kelly::to_json(cpp));
}

}  // extern "C"
