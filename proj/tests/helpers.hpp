#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qds/qds.hpp"

namespace qds::testing {

// Seven-node instance used across the suites: a K4 whose nodes all disagree
// (c = -1) next to a 3-path a-b-c with c = (1, -0.5, -0.5).
// Ids: a=0, b=1, c=2, K4 = {3,4,5,6}.
inline Graph k4path_graph() {
  return Graph(7, {{0, 1}, {1, 2}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
}

inline std::vector<double> k4path_agreements() {
  return {1.0, -0.5, -0.5, -1.0, -1.0, -1.0, -1.0};
}

inline Instance k4path_instance(double theta = 0.0) {
  return Instance(k4path_graph(), k4path_agreements(), theta);
}

inline std::int64_t count_edges_in(const Graph& graph, const std::vector<int>& nodes) {
  std::vector<unsigned char> in_set(graph.num_nodes(), 0);
  for (int v : nodes) in_set[v] = 1;
  std::int64_t twice = 0;
  for (int v : nodes)
    for (int u : graph.neighbors(v))
      if (in_set[u]) ++twice;
  return twice / 2;
}

// Min s-t cut by enumerating every source side; usable up to ~20 arcs' worth
// of nodes. Independent of the flow algorithm.
inline double naive_min_cut(const FlowNetwork& net) {
  std::vector<int> others;
  for (int v = 0; v < net.node_count(); ++v)
    if (v != net.source() && v != net.sink()) others.push_back(v);
  const int k = static_cast<int>(others.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<char> side(net.node_count(), 0);
    side[net.source()] = 1;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) side[others[i]] = 1;
    double cut = 0.0;
    for (int id = 0; id < net.arc_count(); ++id) {
      const FlowNetwork::Arc& a = net.arc(id);
      if (side[a.from] && !side[a.to]) cut += a.capacity;
    }
    best = std::min(best, cut);
  }
  return best;
}

// Quadratic reference peel recomputing every load from scratch each round;
// same tie rule (smallest load, then smallest id). Exact agreement with the
// heap version requires dyadic c, theta and z2.
inline std::vector<int> naive_peel_order(const Instance& inst, double z2) {
  const int n = inst.graph.num_nodes();
  std::vector<unsigned char> alive(n, 1);
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = inst.graph.degree(v);
  std::vector<int> order;
  for (int size = n; size >= 1; --size) {
    int best = -1;
    double best_load = 0.0;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      double load = node_load(degree[v], inst.c[v], inst.theta, z2);
      if (best < 0 || load < best_load) {
        best = v;
        best_load = load;
      }
    }
    order.push_back(best);
    alive[best] = 0;
    for (int u : inst.graph.neighbors(best))
      if (alive[u]) --degree[u];
  }
  return order;
}

// Straight per-subset recount, as independent as it gets; n <= 6 territory.
inline double naive_hdsp_best(const Graph& graph, const std::vector<double>& w) {
  const int n = graph.num_nodes();
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> nodes;
    double wsum = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) {
        nodes.push_back(v);
        wsum += w[v];
      }
    double value = (static_cast<double>(count_edges_in(graph, nodes)) + wsum) /
                   static_cast<double>(nodes.size());
    best = std::max(best, value);
  }
  return best;
}

inline std::vector<double> random_weights(int n, std::uint64_t seed, double lo,
                                          double hi) {
  SplitMix64 rng(seed);
  std::vector<double> w(n);
  for (double& x : w) x = lo + (hi - lo) * rng.uniform();
  return w;
}

// Random small graph with a seed-derived edge count.
inline Graph random_graph(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t m = total == 0 ? 0 : static_cast<std::int64_t>(rng.below(total + 1));
  return gen_gnm(n, m, seed * 7919 + 13);
}

}  // namespace qds::testing
