#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "qds/graph.hpp"
#include "qds/hdsp.hpp"

namespace qds {

/// Certified upper bound on the optimum from the relaxation state at
/// termination: d(S) + lambda_r * (c(S) - theta).
inline double lagrange_upper_bound(const Solution& sol, double lambda_r, double theta) {
  return sol.density + lambda_r * (sol.agreement - theta);
}

struct LambdaProbe {
  double lambda = 0.0;
  bool feasible = false;
  double density = 0.0;
  double agreement = 0.0;
};

struct LagrangeResult {
  Solution solution;
  double lambda_r = 0.0;
  double lambda_l = 0.0;
  double epsilon = 0.0;
  double dstar = 0.0;  // unconstrained max density, sets the search range
  double upper_bound = 0.0;
  int iterations = 0;
  std::vector<LambdaProbe> probes;
};

namespace detail {

// Densest subgraph restricted to an induced node subset, reported in
// original ids.
inline std::vector<int> densest_within(const Graph& graph, std::span<const int> keep) {
  std::vector<int> to_local(graph.num_nodes(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) to_local[keep[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : graph.edges())
    if (to_local[u] >= 0 && to_local[v] >= 0)
      edges.emplace_back(to_local[u], to_local[v]);
  Graph sub(static_cast<int>(keep.size()), std::move(edges));
  HdspResult best = densest_subgraph(sub);
  std::vector<int> nodes;
  nodes.reserve(best.nodes.size());
  for (int v : best.nodes) nodes.push_back(keep[v]);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace detail

/// Bisection over the multiplier lambda >= 0. Every step solves the
/// relaxation max_S d(S) + lambda (c(S) - theta) exactly; feasible optima
/// shrink the right end, infeasible ones raise the left end. The returned
/// set is the optimum at the final right end, which certifies the bound
/// reported in `upper_bound`.
inline LagrangeResult solve_lagrange(const Instance& inst, double epsilon = 1e-6) {
  if (epsilon <= 0.0) throw input_error("epsilon must be positive");
  const Graph& graph = inst.graph;
  const int n = graph.num_nodes();
  const double c_max = inst.max_agreement();
  if (inst.theta > c_max)
    throw infeasible_threshold_error("threshold exceeds every agreement value");

  LagrangeResult result;
  result.epsilon = epsilon;

  auto finish = [&](std::vector<int> nodes) {
    result.solution = subset_stats(inst, nodes);
    result.upper_bound =
        lagrange_upper_bound(result.solution, result.lambda_r, inst.theta);
    result.solution.upper_bound = result.upper_bound;
    result.solution.meta.solver = "lagrange";
    result.solution.meta.theta = inst.theta;
    result.solution.meta.epsilon = epsilon;
    result.solution.meta.lambda_r = result.lambda_r;
    return result;
  };

  // Constant agreements: the constraint is uniformly slack (theta <= c_max
  // was checked above), so the problem is the plain densest subgraph.
  if (all_agreements_equal(inst.c)) {
    HdspResult dsp = densest_subgraph(graph);
    result.dstar = dsp.value;
    return finish(std::move(dsp.nodes));
  }

  // theta == c_max: feasible sets consist of maximum-agreement nodes only,
  // so the exact answer is the densest subgraph among them.
  if (inst.theta == c_max) {
    std::vector<int> top;
    for (int v = 0; v < n; ++v)
      if (inst.c[v] >= c_max) top.push_back(v);
    return finish(detail::densest_within(graph, top));
  }

  HdspSolver solver(graph);
  NodeWeights w(n, 0.0);
  HdspResult dsp = solver.solve(w);
  result.dstar = dsp.value;
  result.lambda_l = 0.0;
  result.lambda_r = result.dstar / (c_max - inst.theta);

  auto weighted = [&](double lambda) {
    for (int v = 0; v < n; ++v) w[v] = lambda * inst.c[v];
  };

  // Optimum of the relaxation at the initial right end. Exact arithmetic
  // guarantees it is feasible; if rounding breaks a tie the wrong way, the
  // best-agreement singleton is an equally good optimum.
  weighted(result.lambda_r);
  HdspResult init = solver.solve(w, dsp.nodes);
  std::vector<int> out_nodes = std::move(init.nodes);
  {
    Solution init_stats = subset_stats(inst, out_nodes);
    if (!init_stats.feasible) out_nodes = {inst.argmax_agreement()};
  }

  std::vector<int> prev = out_nodes;
  while (result.lambda_r - result.lambda_l > epsilon) {
    ++result.iterations;
    const double lambda = 0.5 * (result.lambda_r + result.lambda_l);
    weighted(lambda);
    HdspResult relaxed = solver.solve(w, prev);
    prev = relaxed.nodes;
    Solution stats = subset_stats(inst, relaxed.nodes);
    result.probes.push_back({lambda, stats.feasible, stats.density, stats.agreement});
    if (stats.feasible) {
      out_nodes = std::move(relaxed.nodes);
      result.lambda_r = lambda;
    } else {
      result.lambda_l = lambda;
    }
  }

  return finish(std::move(out_nodes));
}

}  // namespace qds
