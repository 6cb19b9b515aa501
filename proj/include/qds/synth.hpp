#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qds/graph.hpp"

namespace qds {

/// SplitMix64: tiny, seedable, identical output on every platform. All
/// generator output in this module is derived from this single stream so
/// generated instances reproduce bit-for-bit from a seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]; safe under log()
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // uniform integer in [0, bound) by rejection, bias-free
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0} / bound));
    for (;;) {
      std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

  // Box-Muller, cosine branch only: each draw consumes exactly two raw
  // 64-bit outputs, keeping the stream position independent of history.
  double normal(double mean, double stddev) {
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
  }

 private:
  std::uint64_t state_;
};

/// Two-population agreement sample: the first ceil(n/2) nodes come from a
/// normal with mean 0.1, the rest from a normal with mean -0.1. The second
/// parameter of each distribution is a variance (0.01 and 0.1) unless
/// `spread_is_stddev` asks to read it as a standard deviation instead.
inline std::vector<double> gen_bimodal_agreements(int n, std::uint64_t seed,
                                                  bool spread_is_stddev = false) {
  if (n < 2) throw input_error("bimodal sample needs n >= 2");
  const double sd_pos = spread_is_stddev ? 0.01 : std::sqrt(0.01);
  const double sd_neg = spread_is_stddev ? 0.1 : std::sqrt(0.1);
  SplitMix64 rng(seed);
  std::vector<double> c(n);
  const int split = (n + 1) / 2;
  for (int v = 0; v < split; ++v) c[v] = rng.normal(0.1, sd_pos);
  for (int v = split; v < n; ++v) c[v] = rng.normal(-0.1, sd_neg);
  return c;
}

/// Uniform simple graph with exactly m edges. When m exceeds half of all
/// possible pairs the complement is sampled instead, so dense requests stay
/// efficient; both paths are deterministic in the seed.
inline Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed) {
  if (n < 1) throw input_error("graph needs at least one node");
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m < 0 || m > total) throw input_error("edge count out of range for simple graph");

  SplitMix64 rng(seed);
  auto sample_pairs = [&](std::int64_t count) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(count) * 2);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(count);
    while (static_cast<std::int64_t>(pairs.size()) < count) {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
      if (seen.insert(key).second) pairs.emplace_back(u, v);
    }
    return pairs;
  };

  if (m <= total / 2) return Graph(n, sample_pairs(m));

  auto excluded = sample_pairs(total - m);
  std::unordered_set<std::uint64_t> skip;
  skip.reserve(excluded.size() * 2);
  for (auto [u, v] : excluded) skip.insert(static_cast<std::uint64_t>(u) * n + v);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!skip.contains(static_cast<std::uint64_t>(u) * n + v))
        edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

/// n x d opinion matrix with entries uniform in [-1, 1], row-major.
inline std::vector<double> gen_uniform_opinions(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw input_error("opinion matrix needs n >= 1 and d >= 1");
  SplitMix64 rng(seed);
  std::vector<double> values(static_cast<std::size_t>(n) * d);
  for (double& x : values) x = 2.0 * rng.uniform() - 1.0;
  return values;
}

}  // namespace qds
