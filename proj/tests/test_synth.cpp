#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "qds/synth.hpp"

using namespace qds;

namespace {

double mean(const double* xs, int count) {
  double sum = 0.0;
  for (int i = 0; i < count; ++i) sum += xs[i];
  return sum / count;
}

double variance(const double* xs, int count) {
  double m = mean(xs, count);
  double sum = 0.0;
  for (int i = 0; i < count; ++i) sum += (xs[i] - m) * (xs[i] - m);
  return sum / (count - 1);
}

}  // namespace

TEST_CASE("bimodal sample is deterministic in the seed") {
  auto a = gen_bimodal_agreements(100, 17);
  auto b = gen_bimodal_agreements(100, 17);
  CHECK(a == b);
  auto other = gen_bimodal_agreements(100, 18);
  CHECK(a != other);
  CHECK(static_cast<int>(a.size()) == 100);

  auto pair = gen_bimodal_agreements(2, 3);
  CHECK(pair.size() == 2);
  CHECK_THROWS_AS(gen_bimodal_agreements(1, 3), input_error);
}

TEST_CASE("bimodal halves land on their means") {
  const int n = 100000;
  const int half = n / 2;
  auto c = gen_bimodal_agreements(n, 2024);
  double pos_mean = mean(c.data(), half);
  double neg_mean = mean(c.data() + half, n - half);
  // three standard errors with sigma = 0.1 and sqrt(0.1)
  CHECK(std::abs(pos_mean - 0.1) < 3.0 * 0.1 / std::sqrt(half));
  CHECK(std::abs(neg_mean + 0.1) < 3.0 * std::sqrt(0.1) / std::sqrt(n - half));
  // second parameter is a variance by default
  CHECK(variance(c.data(), half) == doctest::Approx(0.01).epsilon(0.05));
  CHECK(variance(c.data() + half, n - half) == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("spread flag reads the parameters as standard deviations") {
  const int n = 40000;
  auto c = gen_bimodal_agreements(n, 7, /*spread_is_stddev=*/true);
  CHECK(std::sqrt(variance(c.data(), n / 2)) == doctest::Approx(0.01).epsilon(0.05));
  CHECK(std::sqrt(variance(c.data() + n / 2, n - n / 2)) ==
        doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("fixed-edge-count random graphs") {
  Graph k4 = gen_gnm(4, 6, 5);
  CHECK(k4.num_edges() == 6);
  for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

  Graph empty = gen_gnm(10, 0, 5);
  CHECK(empty.num_edges() == 0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed);
    const int n = 2 + static_cast<int>(rng.below(40));
    const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
    const std::int64_t m = static_cast<std::int64_t>(rng.below(total + 1));
    Graph g = gen_gnm(n, m, 100 + seed);
    CHECK(g.num_edges() == m);
    std::int64_t degree_sum = 0;
    for (int v = 0; v < n; ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == 2 * m);
    CHECK(g.dropped_duplicates() == 0);
    CHECK(g.dropped_self_loops() == 0);
  }

  // dense request walks the complement path
  Graph dense = gen_gnm(8, 25, 3);
  CHECK(dense.num_edges() == 25);

  CHECK_THROWS_AS(gen_gnm(4, 7, 1), input_error);
  CHECK_THROWS_AS(gen_gnm(0, 0, 1), input_error);
}

TEST_CASE("uniform opinion entries stay inside the unit box") {
  auto values = gen_uniform_opinions(50, 3, 11);
  CHECK(values.size() == 150);
  for (double x : values) {
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
  CHECK(values == gen_uniform_opinions(50, 3, 11));
}
