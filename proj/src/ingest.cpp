#include "kelly/ingest.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "kelly/compensated.hpp"
#include "kelly/constraints.hpp"
#include "kelly/errors.hpp"
#include "kelly/rng.hpp"
#include "json.hpp"

namespace kelly {

std::string to_json(const ReturnStats& stats) {
  nlohmann::json j;
  j["mu_hat"] = stats.mu_hat;
  j["sigma_hat"] = stats.sigma_hat;
  j["x_min"] = stats.x_min;
  j["x_max"] = stats.x_max;
  j["m"] = stats.m;
  if (stats.confinement) {
    j["confinement"] = {{"lo", stats.confinement->lo}, {"hi", stats.confinement->hi}};
  } else {
    j["confinement"] = nullptr;
  }
  return j.dump();
}

namespace {

// Opaque ordered-token compare: numeric when both parse fully as numbers,
// lexicographic otherwise (ISO-8601 strings sort correctly that way).
bool token_decreased(const std::string& prev, const std::string& cur) {
  auto parse = [](const std::string& s, double& out) {
    try {
      std::size_t used = 0;
      out = std::stod(s, &used);
      return used == s.size();
    } catch (const std::exception&) {
      return false;
    }
  };
  double a = 0.0, b = 0.0;
  if (parse(prev, a) && parse(cur, b)) return b < a;
  return cur < prev;
}

}  // namespace

TickSeries read_prices_csv(std::istream& in, std::string label) {
  TickSeries out;
  out.label = std::move(label);
  std::string line;
  std::size_t lineno = 0;
  std::string prev_ts;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;  // first nonempty line is the header
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("read_prices_csv: expected 'timestamp,price'", lineno);
    const std::string ts = line.substr(0, comma);
    const std::string price_field = line.substr(comma + 1);
    double price = 0.0;
    try {
      std::size_t used = 0;
      price = std::stod(price_field, &used);
      while (used < price_field.size() &&
             std::isspace(static_cast<unsigned char>(price_field[used])))
        ++used;
      if (used != price_field.size()) throw std::invalid_argument(price_field);
    } catch (const std::exception&) {
      throw ParseError("read_prices_csv: malformed price '" + price_field + "'", lineno);
    }
    if (!(price > 0.0))
      throw ParseError("read_prices_csv: nonpositive price " + price_field, lineno);
    if (!prev_ts.empty() && token_decreased(prev_ts, ts))
      throw ParseError("read_prices_csv: decreasing timestamp '" + ts + "'", lineno);
    prev_ts = ts;
    out.prices.push_back(price);
  }
  if (out.prices.size() < 2)
    throw DomainError("read_prices_csv: need at least two prices");
  return out;
}

TickSeries read_prices_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("read_prices_csv_file: cannot open " + path);
  return read_prices_csv(in, path);
}

std::vector<double> returns_from_prices(const TickSeries& ticks) {
  if (ticks.prices.size() < 2)
    throw DomainError("returns_from_prices: need at least two prices");
  std::vector<double> out(ticks.prices.size() - 1);
  for (std::size_t k = 0; k + 1 < ticks.prices.size(); ++k)
    out[k] = (ticks.prices[k + 1] - ticks.prices[k]) / ticks.prices[k];
  return out;
}

TickSeries gbm_ticks(double s0, double mu_tick, double sigma_tick, std::size_t m,
                     std::uint64_t seed) {
  if (!(s0 > 0.0)) throw DomainError("gbm_ticks: initial price must be positive");
  if (!(sigma_tick >= 0.0)) throw DomainError("gbm_ticks: volatility must be nonnegative");
  if (m < 2) throw DomainError("gbm_ticks: need at least two ticks");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  TickSeries out;
  out.label = "gbm";
  out.prices.reserve(m);
  out.prices.push_back(s0);
  const double drift = mu_tick - sigma_tick * sigma_tick / 2.0;
  double s = s0;
  for (std::size_t k = 1; k < m; ++k) {
    const double z = sigma_tick > 0.0 ? normal(rng) : 0.0;
    s *= std::exp(drift + sigma_tick * z);
    out.prices.push_back(s);
  }
  return out;
}

ReturnStats summary_stats(std::span<const double> returns) {
  if (returns.empty()) throw DomainError("summary_stats: empty return sequence");
  ReturnStats st;
  st.m = returns.size();
  CompensatedSum sum;
  st.x_min = returns[0];
  st.x_max = returns[0];
  for (double x : returns) {
    sum.add(x);
    st.x_min = std::min(st.x_min, x);
    st.x_max = std::max(st.x_max, x);
  }
  st.mu_hat = sum.value() / static_cast<double>(st.m);
  CompensatedSum sq;
  for (double x : returns) {
    const double d = x - st.mu_hat;
    sq.add(d * d);
  }
  st.sigma_hat = std::sqrt(sq.value() / static_cast<double>(st.m));
  if (st.x_min < 0.0 && st.x_max > 0.0)
    st.confinement = confinement_interval(st.x_min, st.x_max);
  return st;
}

}  // namespace kelly
