#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qds/graph.hpp"

namespace qds {

struct BruteResult {
  double value = 0.0;
  std::vector<int> nodes;
};

namespace detail {

// Gray-code walk over all nonempty subsets with incremental edge counting.
// visit(mask, twice_edges, size) is called once per subset.
template <typename Visit>
void enumerate_subsets(const Graph& graph, int max_n, Visit&& visit) {
  const int n = graph.num_nodes();
  if (n > max_n) throw input_error("graph too large for exhaustive enumeration");
  if (n > 25) throw input_error("exhaustive enumeration is capped at 25 nodes");
  std::vector<std::uint32_t> adj_mask(n, 0);
  for (const auto& [u, v] : graph.edges()) {
    adj_mask[u] |= 1u << v;
    adj_mask[v] |= 1u << u;
  }
  std::uint32_t mask = 0;
  std::int64_t twice_edges = 0;
  int size = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    const std::uint32_t flag = 1u << bit;
    // neighbors already inside, counted before/after the flip symmetrically
    if (mask & flag) {
      mask ^= flag;
      --size;
      twice_edges -= 2 * std::popcount(adj_mask[bit] & mask);
    } else {
      mask ^= flag;
      ++size;
      twice_edges += 2 * std::popcount(adj_mask[bit] & (mask & ~flag));
    }
    visit(mask, twice_edges / 2, size);
  }
}

inline std::vector<int> mask_to_nodes(std::uint32_t mask) {
  std::vector<int> nodes;
  for (int v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1u) nodes.push_back(v);
  return nodes;
}

}  // namespace detail

/// Exhaustive optimum of the constrained problem; nullopt when no nonempty
/// subset meets the threshold. Densities are compared as exact integer
/// fractions; the feasibility comparison carries a 1e-12 slack for
/// non-dyadic agreement values.
inline std::optional<BruteResult> brute_constrained(const Instance& inst,
                                               int max_n = 20) {
  std::uint32_t best_mask = 0;
  std::int64_t best_edges = 0;
  std::int64_t best_size = 0;
  bool found = false;

  // running agreement sum maintained alongside the Gray walk
  double sum_c = 0.0;
  std::uint32_t prev_mask = 0;
  detail::enumerate_subsets(inst.graph, max_n, [&](std::uint32_t mask,
                                                   std::int64_t edges, int size) {
    const std::uint32_t changed = mask ^ prev_mask;
    const int bit = std::countr_zero(changed);
    sum_c += (mask & changed) ? inst.c[bit] : -inst.c[bit];
    prev_mask = mask;
    const double slack = 1e-12 * std::max(1.0, std::abs(inst.theta) * size);
    if (sum_c < inst.theta * size - slack) return;
    if (!found || edges * best_size > best_edges * size) {
      found = true;
      best_mask = mask;
      best_edges = edges;
      best_size = size;
    }
  });

  if (!found) return std::nullopt;
  BruteResult result;
  result.nodes = detail::mask_to_nodes(best_mask);
  result.value = static_cast<double>(best_edges) / static_cast<double>(best_size);
  return result;
}

/// Exhaustive maximum of (|E(S)| + sum w_v)/|S| over nonempty subsets.
inline BruteResult brute_hdsp(const Graph& graph, std::span<const double> w,
                              int max_n = 20) {
  if (graph.num_nodes() < 1) throw input_error("graph must have at least one node");
  std::uint32_t best_mask = 0;
  double best_num = 0.0;
  std::int64_t best_size = 0;
  double sum_w = 0.0;
  std::uint32_t prev_mask = 0;
  detail::enumerate_subsets(graph, max_n, [&](std::uint32_t mask,
                                              std::int64_t edges, int size) {
    const std::uint32_t changed = mask ^ prev_mask;
    const int bit = std::countr_zero(changed);
    sum_w += (mask & changed) ? w[bit] : -w[bit];
    prev_mask = mask;
    const double numerator = static_cast<double>(edges) + sum_w;
    if (best_size == 0 || numerator * best_size > best_num * size) {
      best_mask = mask;
      best_num = numerator;
      best_size = size;
    }
  });
  BruteResult result;
  result.nodes = detail::mask_to_nodes(best_mask);
  result.value = best_num / static_cast<double>(best_size);
  return result;
}

/// Exhaustive maximum of d(S) subject to |S| <= k.
inline BruteResult brute_size_bounded(const Graph& graph, int k, int max_n = 16) {
  if (k < 1) throw input_error("k must be positive");
  if (graph.num_nodes() < 1) throw input_error("graph must have at least one node");
  std::uint32_t best_mask = 0;
  std::int64_t best_edges = 0;
  std::int64_t best_size = 0;
  detail::enumerate_subsets(graph, max_n, [&](std::uint32_t mask,
                                              std::int64_t edges, int size) {
    if (size > k) return;
    if (best_size == 0 || edges * best_size > best_edges * size) {
      best_mask = mask;
      best_edges = edges;
      best_size = size;
    }
  });
  BruteResult result;
  result.nodes = detail::mask_to_nodes(best_mask);
  result.value = static_cast<double>(best_edges) / static_cast<double>(best_size);
  return result;
}

/// Reduction gadget from the size-bounded problem: the input graph plus k
/// isolated nodes, zero agreements on original nodes, unit agreements on the
/// added ones, threshold one half. Optima map 1:2 between the two problems.
inline Instance size_bound_gadget(const Graph& graph, int k) {
  if (k < 1) throw input_error("k must be positive");
  const int n = graph.num_nodes();
  Graph widened(n + k, graph.edges());
  std::vector<double> c(n + k, 0.0);
  for (int i = 0; i < k; ++i) c[n + i] = 1.0;
  return Instance(std::move(widened), std::move(c), 0.5);
}

}  // namespace qds
