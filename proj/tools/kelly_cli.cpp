// Command-line surface over the kelly C API. Machine-readable outputs only
// (JSON or CSV); every subcommand is deterministic under its seed.
//
// Exit codes: 0 success, 1 domain/parse error from the library, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kelly.h"

namespace {

// Shortest round-trip decimal text, stable across runs of one build.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int fail_library() {
  std::cerr << "error: " << kelly_last_error() << "\n";
  return 1;
}

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

// Writes payload to path, or to standard output when path is empty.
int emit(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << "\n";
    return 1;
  }
  out << payload;
  return 0;
}

// Model mini-grammar "name:p1,p2": coin:p, toy:epsilon,x0, normal:mu,sigma,
// pathological:k_ref,n_terms. Returns false with a message on bad syntax;
// parameter-value validation is left to the library.
bool parse_model_arg(const std::string& text, kelly_model& model, std::string& err) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    err = "model spec needs the form name:param1[,param2]: " + text;
    return false;
  }
  std::string name = text.substr(0, colon);
  std::vector<std::string> params;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (true) {
    auto comma = rest.find(',', start);
    params.push_back(rest.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  auto number = [&](const std::string& token, double& out) {
    std::size_t used = 0;
    try {
      out = std::stod(token, &used);
    } catch (const std::exception&) {
      return false;
    }
    return used == token.size() && !token.empty();
  };

  model = kelly_model{};
  if (name == "coin") {
    if (params.size() != 1 || !number(params[0], model.p)) {
      err = "coin spec takes one parameter: coin:p";
      return false;
    }
    model.kind = KELLY_MODEL_COIN;
  } else if (name == "toy") {
    if (params.size() != 2 || !number(params[0], model.epsilon) ||
        !number(params[1], model.x0)) {
      err = "toy spec takes two parameters: toy:epsilon,x0";
      return false;
    }
    model.kind = KELLY_MODEL_TOY;
  } else if (name == "normal") {
    if (params.size() != 2 || !number(params[0], model.mu) || !number(params[1], model.sigma)) {
      err = "normal spec takes two parameters: normal:mu,sigma";
      return false;
    }
    model.kind = KELLY_MODEL_NORMAL;
  } else if (name == "pathological") {
    double terms = 0.0;
    if (params.size() != 2 || !number(params[0], model.k_ref) || !number(params[1], terms) ||
        terms < 1.0 || terms != std::floor(terms)) {
      err = "pathological spec takes k_ref and a positive integer term count";
      return false;
    }
    model.kind = KELLY_MODEL_PATHOLOGICAL;
    model.n_terms = static_cast<uint64_t>(terms);
  } else {
    err = "unknown model name: " + name + " (coin, toy, normal, pathological)";
    return false;
  }
  return true;
}

// JSON config files: top-level object of flag-name -> value, arrays allowed
// for vector flags.
class JsonConfig : public CLI::Config {
public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (!opt->get_configurable()) continue;
      std::string name = opt->get_single_name();
      if (name == "help" || name == "config" || name.empty()) continue;
      if (opt->get_type_size() == 0) {
        if (opt->count() > 0) j[name] = true;
      } else if (opt->count() == 1) {
        j[name] = opt->results().at(0);
      } else if (opt->count() > 1) {
        j[name] = opt->results();
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const std::exception& e) {
      throw CLI::ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config root must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

private:
  static std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const nlohmann::json& j, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const nlohmann::json& v = it.value();
      if (v.is_object()) {
        auto nested = parents;
        nested.push_back(it.key());
        collect(v, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (v.is_array()) {
        for (const auto& elem : v) item.inputs.push_back(scalar_text(elem));
      } else {
        item.inputs.push_back(scalar_text(v));
      }
      items.push_back(std::move(item));
    }
  }
};

// CLI11 only reads config files attached to the root app, so a per-subcommand
// --config has to be applied by hand: values fill options the command line
// (or environment) left untouched, then the normal conversion callback runs.
void apply_config_file(CLI::App* sub) {
  CLI::Option* cfg = sub->get_config_ptr();
  if (cfg == nullptr || cfg->count() == 0) return;
  const std::string path = cfg->as<std::string>();
  std::ifstream input(path);
  if (!input) throw CLI::ConfigError("cannot open config file: " + path);
  const auto items = sub->get_config_formatter()->from_config(input);
  for (const auto& item : items) {
    CLI::Option* op =
        item.parents.empty() ? sub->get_option_no_throw("--" + item.name) : nullptr;
    if (op == nullptr || op == cfg || !op->get_configurable())
      throw CLI::ConfigError("unknown config key: " + item.fullname());
    if (op->count() > 0) continue;  // command line and environment win
    for (const std::string& value : item.inputs) op->add_result(value);
    op->run_callback();
  }
}

struct ResultGuard {
  kelly_result* r = nullptr;
  ~ResultGuard() { kelly_result_free(r); }
};

struct DistGuard {
  kelly_dist* d = nullptr;
  ~DistGuard() { kelly_dist_free(d); }
};

struct TicksGuard {
  kelly_ticks* t = nullptr;
  ~TicksGuard() { kelly_ticks_free(t); }
};

int print_result_json(kelly_result* r) {
  char* json = kelly_result_to_json(r);
  std::cout << json << "\n";
  kelly_string_free(json);
  return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string samples;
  std::string spec;
  double cap = 1.0;
  double tol = 1e-10;
  bool theoretical = false;
};

int run_optimize(const OptimizeArgs& a) {
  if (a.samples.empty() == a.spec.empty())
    return fail_usage("exactly one of --samples or --spec is required");
  if (a.theoretical && a.spec.empty())
    return fail_usage("--theoretical needs --spec");

  kelly_config cfg;
  kelly_config_default(&cfg);
  cfg.cap = a.cap;
  cfg.tol_k = a.tol;

  ResultGuard result;
  if (a.theoretical) {
    kelly_model model;
    std::string err;
    if (!parse_model_arg(a.spec, model, err)) return fail_usage(err);
    if (kelly_theoretical(&model, &cfg, &result.r) != KELLY_OK) return fail_library();
    return print_result_json(result.r);
  }

  DistGuard dist;
  if (!a.spec.empty()) {
    kelly_model model;
    std::string err;
    if (!parse_model_arg(a.spec, model, err)) return fail_usage(err);
    if (kelly_dist_from_model(&model, &dist.d) != KELLY_OK) return fail_library();
  } else {
    if (kelly_dist_from_samples_csv(a.samples.c_str(), &dist.d, nullptr) != KELLY_OK)
      return fail_library();
  }

  kelly_status st = kelly_dist_dim(dist.d) == 1
                        ? kelly_optimize_scalar(dist.d, &cfg, &result.r)
                        : kelly_optimize_vector(dist.d, &cfg, &result.r);
  if (st != KELLY_OK) return fail_library();
  return print_result_json(result.r);
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string samples;
};

int run_fit(const FitArgs& a) {
  DistGuard dist;
  size_t n_samples = 0;
  if (kelly_dist_from_samples_csv(a.samples.c_str(), &dist.d, &n_samples) != KELLY_OK)
    return fail_library();

  size_t dim = kelly_dist_dim(dist.d);
  std::vector<double> lo(dim), hi(dim);
  if (kelly_dist_support_extremes(dist.d, lo.data(), hi.data()) != KELLY_OK)
    return fail_library();

  nlohmann::json j;
  j["dim"] = dim;
  j["n_samples"] = n_samples;
  j["n_atoms"] = kelly_dist_size(dist.d);
  j["support_min"] = lo;
  j["support_max"] = hi;
  std::cout << j.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- constrain

struct ConstrainArgs {
  std::string set_kind;
  double lo = 0.0;
  double hi = 0.0;
  bool have_lo = false;
  bool have_hi = false;
  std::vector<double> center;
  std::vector<double> half_widths;
  double r = 0.0;
  bool have_r = false;
  std::vector<double> k;
  std::size_t boundary = 0;
  std::string output;
};

int run_constrain(const ConstrainArgs& a) {
  if (a.boundary > 0) {
    if (a.set_kind != "sphere") return fail_usage("--boundary applies to --set sphere only");
    if (a.center.size() != 2) return fail_usage("--boundary needs a two-dimensional --center");
    if (!a.have_r) return fail_usage("--set sphere needs --r");
    std::vector<double> theta(a.boundary), pts(2 * a.boundary);
    if (kelly_sphere_boundary(a.center.data(), a.r, a.boundary, theta.data(), pts.data()) !=
        KELLY_OK)
      return fail_library();
    std::string payload = "theta,k1,k2\n";
    for (std::size_t i = 0; i < a.boundary; ++i)
      payload += fmt(theta[i]) + "," + fmt(pts[2 * i]) + "," + fmt(pts[2 * i + 1]) + "\n";
    return emit(a.output, payload);
  }

  if (a.k.empty()) return fail_usage("--k is required for a feasibility verdict");

  kelly_set* set = nullptr;
  if (a.set_kind == "interval") {
    if (!a.have_lo || !a.have_hi) return fail_usage("--set interval needs --lo and --hi");
    if (kelly_set_interval(a.lo, a.hi, &set) != KELLY_OK) return fail_library();
  } else if (a.set_kind == "cube") {
    if (a.center.empty() || a.half_widths.empty())
      return fail_usage("--set cube needs --center and --half-widths");
    if (kelly_set_hypercube(a.center.data(), a.half_widths.data(), a.center.size(), &set) !=
        KELLY_OK)
      return fail_library();
  } else if (a.set_kind == "sphere") {
    if (a.center.empty() || !a.have_r) return fail_usage("--set sphere needs --center and --r");
    if (kelly_set_hypersphere(a.center.data(), a.center.size(), a.r, &set) != KELLY_OK)
      return fail_library();
  } else {
    return fail_usage("--set must be interval, cube or sphere");
  }

  int feasible = 0;
  kelly_status st = kelly_set_feasible(set, a.k.data(), a.k.size(), &feasible);
  kelly_set_free(set);
  if (st != KELLY_OK) return fail_library();
  std::cout << (feasible ? "feasible" : "infeasible") << "\n";
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string spec;
  std::uint64_t m = 50;
  std::uint64_t n_future = 10000;
  std::uint64_t seed = 42;
  double cap = 1.0;
};

int run_simulate(const SimulateArgs& a) {
  kelly_model model;
  std::string err;
  if (!parse_model_arg(a.spec, model, err)) return fail_usage(err);

  kelly_config cfg;
  kelly_config_default(&cfg);
  cfg.cap = a.cap;

  kelly_comparison report;
  if (kelly_run_comparison(&model, a.m, a.n_future, a.seed, &cfg, &report) != KELLY_OK)
    return fail_library();
  char* json = kelly_comparison_to_json(&report);
  std::cout << json << "\n";
  kelly_string_free(json);
  return 0;
}

// ---------------------------------------------------------------- sweep-mu

struct SweepArgs {
  double from = 0.0;
  double to = 4.0;
  double step = 0.25;
  double sigma = 1.0;
  std::uint64_t m = 100000;
  std::uint64_t seed = 42;
  double cap = 1.0;
  std::string output;
};

int run_sweep(const SweepArgs& a) {
  if (a.step <= 0.0) return fail_usage("--step must be positive");
  if (a.to < a.from) return fail_usage("--to must not be below --from");
  std::vector<double> grid;
  std::size_t n = static_cast<std::size_t>((a.to - a.from) / a.step + 1e-9) + 1;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(a.from + a.step * static_cast<double>(i));

  kelly_config cfg;
  kelly_config_default(&cfg);
  cfg.cap = a.cap;

  std::vector<double> k_hat(grid.size());
  if (kelly_sweep_mu(grid.data(), grid.size(), a.sigma, a.m, a.seed, &cfg, k_hat.data()) !=
      KELLY_OK)
    return fail_library();

  std::string payload = "mu,k_hat\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    payload += fmt(grid[i]) + "," + fmt(k_hat[i]) + "\n";
  return emit(a.output, payload);
}

// ---------------------------------------------------------------- sphere-sets

struct SphereSetsArgs {
  std::vector<double> x0 = {0.5, 0.5};
  std::vector<double> radii = {1.0, 1.25, 2.0, 3.0, 5.0};
  std::size_t points = 256;
  std::string out_dir = ".";
};

int run_sphere_sets(const SphereSetsArgs& a) {
  if (a.x0.size() != 2) return fail_usage("--x0 needs exactly two coordinates");
  for (double r : a.radii) {
    std::vector<double> theta(a.points), pts(2 * a.points);
    if (kelly_sphere_boundary(a.x0.data(), r, a.points, theta.data(), pts.data()) != KELLY_OK)
      return fail_library();
    std::string payload = "theta,k1,k2\n";
    for (std::size_t i = 0; i < a.points; ++i)
      payload += fmt(theta[i]) + "," + fmt(pts[2 * i]) + "," + fmt(pts[2 * i + 1]) + "\n";
    char name[64];
    std::snprintf(name, sizeof name, "sphere_r%g.csv", r);
    std::string path = a.out_dir + "/" + name;
    int rc = emit(path, payload);
    if (rc != 0) return rc;
    std::cout << path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- ticks

struct TicksArgs {
  std::string csv;
  bool synthetic = false;
  double s0 = 100.0;
  double mu_tick = 1.63e-8;
  double sigma_tick = 1.405e-4;
  std::uint64_t m = 110000;
  std::uint64_t seed = 42;
  double cap = 1.0;
};

int run_ticks(const TicksArgs& a) {
  if (a.csv.empty() == !a.synthetic)
    return fail_usage("exactly one of --csv or --synthetic is required");

  TicksGuard ticks;
  if (a.synthetic) {
    if (kelly_ticks_gbm(a.s0, a.mu_tick, a.sigma_tick, a.m, a.seed, &ticks.t) != KELLY_OK)
      return fail_library();
  } else {
    if (kelly_ticks_read_csv(a.csv.c_str(), &ticks.t) != KELLY_OK) return fail_library();
  }

  size_t n_prices = kelly_ticks_size(ticks.t);
  std::vector<double> returns(n_prices - 1);
  if (kelly_ticks_returns(ticks.t, returns.data()) != KELLY_OK) return fail_library();

  kelly_stats stats;
  if (kelly_return_stats(returns.data(), returns.size(), &stats) != KELLY_OK)
    return fail_library();

  DistGuard dist;
  if (kelly_dist_from_samples(returns.data(), returns.size(), 1, &dist.d) != KELLY_OK)
    return fail_library();

  kelly_config cfg;
  kelly_config_default(&cfg);
  cfg.cap = a.cap;
  ResultGuard result;
  if (kelly_optimize_scalar(dist.d, &cfg, &result.r) != KELLY_OK) return fail_library();
  double k_star = 0.0;
  if (kelly_result_k(result.r, &k_star) != KELLY_OK) return fail_library();

  double merton = 0.0;
  if (kelly_merton_fraction(stats.mu_hat, stats.sigma_hat, &merton) != KELLY_OK)
    return fail_library();

  char* stats_json = kelly_stats_to_json(&stats);
  nlohmann::json j = nlohmann::json::parse(stats_json);
  kelly_string_free(stats_json);
  j["k_star_empirical"] = k_star;
  j["merton_fraction"] = merton;
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-optimal (Kelly) bet sizing: optimizers, feasibility sets, simulators"};
  app.require_subcommand(1);
  auto formatter = std::make_shared<JsonConfig>();

  auto add_config = [&](CLI::App* sub) {
    sub->set_config("--config", "", "JSON file mirroring this subcommand's flags");
    sub->config_formatter(formatter);
  };

  OptimizeArgs opt;
  CLI::App* c_opt = app.add_subcommand("optimize", "Optimal fraction for samples or a model");
  auto* opt_samples = c_opt->add_option("--samples", opt.samples, "Sample CSV, one row per draw");
  auto* opt_spec =
      c_opt->add_option("--spec", opt.spec, "Model spec name:params (e.g. coin:0.6)");
  opt_samples->excludes(opt_spec);
  c_opt->add_option("--cap", opt.cap, "Box bound on |k_i|")->capture_default_str();
  c_opt->add_option("--tol", opt.tol, "Fraction tolerance")->capture_default_str();
  c_opt->add_flag("--theoretical", opt.theoretical,
                  "Model-level optimum (closed forms; normal returns bet 0)");
  add_config(c_opt);

  FitArgs fit;
  CLI::App* c_fit = app.add_subcommand("fit", "Empirical distribution summary of a sample CSV");
  c_fit->add_option("--samples", fit.samples, "Sample CSV, one row per draw")->required();
  add_config(c_fit);

  ConstrainArgs con;
  CLI::App* c_con = app.add_subcommand("constrain", "Feasibility under a support set");
  c_con->add_option("--set", con.set_kind, "Set kind: interval, cube or sphere")
      ->required()
      ->check(CLI::IsMember({"interval", "cube", "sphere"}));
  c_con->add_option("--lo", con.lo, "Interval lower end");
  c_con->add_option("--hi", con.hi, "Interval upper end");
  c_con->add_option("--center", con.center, "Set center, comma-separated")->delimiter(',');
  c_con->add_option("--half-widths", con.half_widths, "Cube half widths, comma-separated")
      ->delimiter(',');
  c_con->add_option("--r", con.r, "Sphere radius");
  c_con->add_option("--k", con.k, "Fraction vector to test, comma-separated")->delimiter(',');
  c_con->add_option("--boundary", con.boundary,
                    "Emit N-point sphere constraint boundary CSV instead of a verdict");
  c_con->add_option("--output", con.output, "Write CSV here instead of standard output");
  add_config(c_con);

  SimulateArgs sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "Theory-vs-data betting comparison");
  c_sim->add_option("--spec", sim.spec, "Model spec name:params")->required();
  c_sim->add_option("--m", sim.m, "Estimation sample budget")->capture_default_str();
  c_sim->add_option("--n-future", sim.n_future, "Future draws for both bettors")
      ->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "RNG seed")->envname("KELLY_SEED")->capture_default_str();
  c_sim->add_option("--cap", sim.cap, "Box bound on |k_i|")->capture_default_str();
  add_config(c_sim);

  SweepArgs swp;
  CLI::App* c_swp = app.add_subcommand("sweep-mu", "Empirical fraction vs mean, common noise");
  c_swp->add_option("--from", swp.from, "Grid start")->capture_default_str();
  c_swp->add_option("--to", swp.to, "Grid end (inclusive)")->capture_default_str();
  c_swp->add_option("--step", swp.step, "Grid step")->capture_default_str();
  c_swp->add_option("--sigma", swp.sigma, "Sample standard deviation")->capture_default_str();
  c_swp->add_option("--m", swp.m, "Samples per grid point")->capture_default_str();
  c_swp->add_option("--seed", swp.seed, "RNG seed")->envname("KELLY_SEED")->capture_default_str();
  c_swp->add_option("--cap", swp.cap, "Box bound on |k_i|")->capture_default_str();
  c_swp->add_option("--output", swp.output, "Write CSV here instead of standard output");
  add_config(c_swp);

  SphereSetsArgs sph;
  CLI::App* c_sph = app.add_subcommand("sphere-sets", "Feasible-set boundaries per radius");
  c_sph->add_option("--x0", sph.x0, "Sphere center, two comma-separated coordinates")
      ->delimiter(',')
      ->capture_default_str();
  c_sph->add_option("--radii", sph.radii, "Radii, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  c_sph->add_option("--points", sph.points, "Boundary points per radius")->capture_default_str();
  c_sph->add_option("--out-dir", sph.out_dir, "Directory for the CSV files")
      ->capture_default_str();
  add_config(c_sph);

  TicksArgs tks;
  CLI::App* c_tks = app.add_subcommand("ticks", "Return stats and fractions from tick prices");
  auto* tks_csv = c_tks->add_option("--csv", tks.csv, "Tick CSV: timestamp,price with header");
  auto* tks_syn = c_tks->add_flag("--synthetic", tks.synthetic, "Generate geometric Brownian ticks");
  tks_csv->excludes(tks_syn);
  c_tks->add_option("--s0", tks.s0, "Synthetic start price")->capture_default_str();
  c_tks->add_option("--mu-tick", tks.mu_tick, "Synthetic per-tick log drift")
      ->capture_default_str();
  c_tks->add_option("--sigma-tick", tks.sigma_tick, "Synthetic per-tick volatility")
      ->capture_default_str();
  c_tks->add_option("--m", tks.m, "Synthetic tick count")->capture_default_str();
  c_tks->add_option("--seed", tks.seed, "RNG seed")->envname("KELLY_SEED")->capture_default_str();
  c_tks->add_option("--cap", tks.cap, "Box bound on |k_i|")->capture_default_str();
  add_config(c_tks);

  auto* opt_lo = c_con->get_option("--lo");
  auto* opt_hi = c_con->get_option("--hi");
  auto* opt_r = c_con->get_option("--r");

  try {
    app.parse(argc, argv);
    for (CLI::App* sub : app.get_subcommands()) apply_config_file(sub);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  con.have_lo = opt_lo->count() > 0;
  con.have_hi = opt_hi->count() > 0;
  con.have_r = opt_r->count() > 0;

  try {
    if (c_opt->parsed()) return run_optimize(opt);
    if (c_fit->parsed()) return run_fit(fit);
    if (c_con->parsed()) return run_constrain(con);
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_swp->parsed()) return run_sweep(swp);
    if (c_sph->parsed()) return run_sphere_sets(sph);
    if (c_tks->parsed()) return run_ticks(tks);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return fail_usage("no subcommand given");
}
