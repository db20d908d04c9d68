#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "kelly/distribution.hpp"
#include "kelly/errors.hpp"

using namespace kelly;

TEST_CASE("distribution constructor enforces invariants") {
  CHECK_THROWS_AS(DiscreteDistribution({}, {}, 1), DomainError);
  CHECK_THROWS_AS(DiscreteDistribution({1.0}, {0.5}, 1), DomainError);  // mass 0.5
  CHECK_THROWS_AS(DiscreteDistribution({1.0, -1.0}, {1.5, -0.5}, 1), DomainError);
  CHECK_THROWS_AS(
      DiscreteDistribution({std::numeric_limits<double>::infinity()}, {1.0}, 1), DomainError);
  CHECK_THROWS_AS(DiscreteDistribution({1.0, 2.0, 3.0}, {0.5, 0.5}, 2), DomainError);

  DiscreteDistribution d({1.0, -1.0}, {0.75, 0.25}, 1);
  CHECK(d.dim() == 1);
  CHECK(d.size() == 2);
  CHECK(d.atom(0)[0] == 1.0);
  CHECK(d.prob(1) == 0.25);
}

TEST_CASE("empirical distribution merges exact duplicates in sorted order") {
  SampleSet s;
  s.values = {0.5, -0.25, 0.5};
  auto d = empirical_from_samples(s);
  REQUIRE(d.size() == 2);
  CHECK(d.atom(0)[0] == -0.25);
  CHECK(d.prob(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(d.atom(1)[0] == 0.5);
  CHECK(d.prob(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("empirical distribution is permutation invariant") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(0, 4);
  const double pool[] = {-1.0, -0.25, 0.0, 0.5, 2.0};
  std::vector<double> values(400);
  for (double& v : values) v = pool[pick(rng)];

  SampleSet a;
  a.values = values;
  std::shuffle(values.begin(), values.end(), rng);
  SampleSet b;
  b.values = values;

  auto da = empirical_from_samples(a);
  auto db = empirical_from_samples(b);
  REQUIRE(da.size() == db.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    CHECK(da.atom(i)[0] == db.atom(i)[0]);
    CHECK(da.prob(i) == db.prob(i));
  }
}

TEST_CASE("empirical distribution merges multi-dimensional points lexicographically") {
  SampleSet s;
  s.dim = 2;
  s.values = {1.0, 2.0, -1.0, 5.0, 1.0, 2.0, 1.0, 0.0};
  auto d = empirical_from_samples(s);
  REQUIRE(d.size() == 3);
  CHECK(d.atom(0)[0] == -1.0);
  CHECK(d.atom(0)[1] == 5.0);
  CHECK(d.atom(1)[0] == 1.0);
  CHECK(d.atom(1)[1] == 0.0);
  CHECK(d.prob(2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("empirical probabilities total one for large random samples") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampleSet s;
  s.values.resize(10000);
  for (double& v : s.values) v = u(rng);
  auto d = empirical_from_samples(s);
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) total += d.prob(i);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coin and toy models produce their two-atom forms") {
  auto coin = from_spec(BernoulliCoin{0.75});
  REQUIRE(coin.size() == 2);
  CHECK(coin.atom(0)[0] == 1.0);
  CHECK(coin.prob(0) == 0.75);
  CHECK(coin.atom(1)[0] == -1.0);
  CHECK(coin.prob(1) == 0.25);

  auto toy = from_spec(ToyBernoulli{0.001, 100.0});
  REQUIRE(toy.size() == 2);
  CHECK(toy.atom(0)[0] == 1.0);
  CHECK(toy.prob(0) == 0.999);
  CHECK(toy.atom(1)[0] == -100.0);
  CHECK(toy.prob(1) == 0.001);

  auto ext = support_extremes(toy);
  CHECK(ext.min[0] == -100.0);
  CHECK(ext.max[0] == 1.0);
}

TEST_CASE("normal model has no atom form") {
  CHECK_THROWS_AS(from_spec(NormalReturns{4.0, 1.0}), DomainError);
}

TEST_CASE("heavy-tail model with one term renormalizes its two weights") {
  auto d = from_spec(Pathological{0.5, 1});
  REQUIRE(d.size() == 2);
  CHECK(d.atom(0)[0] == 1.0);
  // weights 1/(2*theta) and 1/theta renormalize to 1/3 and 2/3
  CHECK(d.prob(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(d.atom(1)[0] == doctest::Approx(std::expm1(-1.0) / 0.5).epsilon(1e-15));
  CHECK(d.prob(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("heavy-tail atoms decrease toward the survival edge") {
  auto d = from_spec(Pathological{0.5, 30});
  REQUIRE(d.size() == 31);
  double prev = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double x = d.atom(i)[0];
    CHECK(x < prev);
    CHECK(x > -2.0);
    prev = x;
  }
  CHECK(support_extremes(d).min[0] == d.atom(30)[0]);
}

TEST_CASE("model validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(validate(ModelSpec(BernoulliCoin{-0.1})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(BernoulliCoin{1.1})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(ToyBernoulli{0.0, 100.0})), DomainError);
  // the epsilon bound 1/(1+x0) is open
  CHECK_THROWS_AS(validate(ModelSpec(ToyBernoulli{1.0 / 101.0, 100.0})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(ToyBernoulli{0.001, -5.0})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(NormalReturns{0.0, 0.0})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(Pathological{0.0, 10})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(Pathological{1.0, 10})), DomainError);
  CHECK_THROWS_AS(validate(ModelSpec(Pathological{0.5, 0})), DomainError);
  CHECK_NOTHROW(validate(ModelSpec(ToyBernoulli{0.001, 100.0})));
}

TEST_CASE("gaussian sampling is seeded and statistically sane") {
  auto s = gaussian_samples(0.0, 1.0, 100000, 7);
  REQUIRE(s.count() == 100000);
  double mean = 0.0;
  for (double v : s.values) mean += v;
  mean /= static_cast<double>(s.count());
  double var = 0.0;
  for (double v : s.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(s.count());
  CHECK(std::abs(mean) <= 0.02);
  CHECK(std::abs(std::sqrt(var) - 1.0) <= 0.02);

  auto again = gaussian_samples(4.0, 1.0, 10, 1);
  auto twice = gaussian_samples(4.0, 1.0, 10, 1);
  CHECK(again.values == twice.values);
  CHECK(again.seed == std::uint64_t{1});

  CHECK_THROWS_AS(gaussian_samples(1.0, 0.0, 5, 1), DomainError);
  CHECK_THROWS_AS(gaussian_samples(0.0, 1.0, 0, 1), DomainError);
}

TEST_CASE("atom sampling draws only support points at model frequencies") {
  auto coin = from_spec(BernoulliCoin{0.75});
  Rng rng = make_rng(11);
  auto draws = sample_atoms(coin, 10000, rng);
  REQUIRE(draws.size() == 10000);
  std::size_t heads = 0;
  for (double v : draws) {
    CHECK((v == 1.0 || v == -1.0));
    if (v == 1.0) ++heads;
  }
  const double frequency = static_cast<double>(heads) / 10000.0;
  CHECK(frequency > 0.73);
  CHECK(frequency < 0.77);

  Rng rng2 = make_rng(11);
  CHECK(sample_atoms(coin, 10000, rng2) == draws);
}

TEST_CASE("support extremes ignore zero-probability atoms") {
  DiscreteDistribution d({5.0, 99.0}, {1.0, 0.0}, 1);
  auto ext = support_extremes(d);
  CHECK(ext.min[0] == 5.0);
  CHECK(ext.max[0] == 5.0);
}

TEST_CASE("sample csv reader handles comments, blanks and line endings") {
  std::istringstream in("# header\n0.5\n\n1.25\r\n");
  auto s = read_samples_csv(in);
  REQUIRE(s.count() == 2);
  CHECK(s.dim == 1);
  CHECK(s.values[0] == 0.5);
  CHECK(s.values[1] == 1.25);
}

TEST_CASE("sample csv reader infers and enforces one dimension") {
  std::istringstream ok("1,2\n3,4\n");
  auto s = read_samples_csv(ok);
  CHECK(s.dim == 2);
  CHECK(s.count() == 2);

  std::istringstream ragged("1,2\n3\n");
  try {
    read_samples_csv(ragged);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream garbage("abc\n");
  CHECK_THROWS_AS(read_samples_csv(garbage), ParseError);
}
