#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "qds/graph.hpp"
#include "qds/maxflow.hpp"

namespace qds {

// Node weights of either sign for the generalized density objective
// (|E(S)| + sum_{v in S} w_v) / |S|.
using NodeWeights = std::vector<double>;

struct HdspDecision {
  std::vector<int> nodes;  // maximizer of F(S) = |E(S)| + sum_{v in S}(w_v - target); empty if no S has F > 0
  double margin = 0.0;     // max(0, F(best))
};

struct HdspResult {
  std::vector<int> nodes;
  double value = 0.0;
  int iterations = 0;
  std::vector<double> value_path;  // accepted ratios, strictly increasing
};

/// Solves max_S (|E(S)| + sum w_v)/|S| exactly by ratio iteration, each step
/// answered with one min s-t cut. Reusable across weight vectors on the same
/// graph: the network topology is built once, only terminal capacities move.
class HdspSolver {
 public:
  explicit HdspSolver(const Graph& graph)
      : graph_(&graph),
        net_(graph.num_nodes() + 2, graph.num_nodes(), graph.num_nodes() + 1),
        in_set_(graph.num_nodes(), 0) {
    const int n = graph.num_nodes();
    for (const auto& [u, v] : graph.edges()) net_.add_arc(u, v, 1.0, 1.0);
    source_arc_.resize(n);
    sink_arc_.resize(n);
    for (int v = 0; v < n; ++v) {
      source_arc_[v] = net_.add_arc(n, v, 0.0);
      sink_arc_[v] = net_.add_arc(v, n + 1, 0.0);
    }
  }

  /// One min-cut decision: maximize F(S) = |E(S)| + sum_{v in S}(w_v - target).
  /// Doubling the objective turns it into node gains deg(v) + 2(w_v - target)
  /// minus the cut between S and its complement, which is a standard
  /// source/sink split by gain sign.
  HdspDecision decide(std::span<const double> w, double target) {
    const int n = graph_->num_nodes();
    double positive_total = 0.0;
    for (int v = 0; v < n; ++v) {
      double gain = graph_->degree(v) + 2.0 * (w[v] - target);
      if (gain > 0.0) {
        net_.set_capacity(source_arc_[v], gain);
        net_.set_capacity(sink_arc_[v], 0.0);
        positive_total += gain;
      } else {
        net_.set_capacity(source_arc_[v], 0.0);
        net_.set_capacity(sink_arc_[v], -gain);
      }
    }
    MaxFlowResult cut = max_flow(net_);
    HdspDecision decision;
    decision.margin = std::max(0.0, 0.5 * (positive_total - cut.value));
    for (int v : cut.source_side)
      if (v < n) decision.nodes.push_back(v);
    if (decision.nodes.empty()) decision.margin = 0.0;
    return decision;
  }

  HdspResult solve(std::span<const double> w, std::span<const int> hint = {}) {
    const int n = graph_->num_nodes();
    if (n < 1) throw input_error("graph must have at least one node");
    if (static_cast<int>(w.size()) != n)
      throw input_error("weight vector length does not match node count");
    int best_single = 0;
    for (int v = 1; v < n; ++v)
      if (w[v] > w[best_single]) best_single = v;
    HdspResult result;
    result.nodes = {best_single};
    result.value = w[best_single];
    if (!hint.empty()) {
      double hint_ratio = ratio_of(hint, w);
      if (hint_ratio > result.value) {
        result.nodes.assign(hint.begin(), hint.end());
        result.value = hint_ratio;
      }
    }
    result.value_path.push_back(result.value);
    for (;;) {
      if (result.iterations >= max_iterations_)
        throw std::runtime_error("ratio iteration did not converge");
      ++result.iterations;
      HdspDecision decision = decide(w, result.value);
      if (decision.margin <= margin_tol_) break;
      double improved = ratio_of(decision.nodes, w);
      if (improved <= result.value) break;  // guards against rounding stalls
      result.nodes = std::move(decision.nodes);
      result.value = improved;
      result.value_path.push_back(improved);
    }
    std::sort(result.nodes.begin(), result.nodes.end());
    return result;
  }

  double ratio_of(std::span<const int> subset, std::span<const double> w) {
    std::int64_t twice_edges = 0;
    double weight_sum = 0.0;
    for (int v : subset) in_set_[v] = 1;
    for (int v : subset) {
      weight_sum += w[v];
      for (int u : graph_->neighbors(v))
        if (in_set_[u]) ++twice_edges;
    }
    for (int v : subset) in_set_[v] = 0;
    return (0.5 * static_cast<double>(twice_edges) + weight_sum) /
           static_cast<double>(subset.size());
  }

 private:
  static constexpr double margin_tol_ = 1e-9;
  static constexpr int max_iterations_ = 200;

  const Graph* graph_;
  FlowNetwork net_;
  std::vector<int> source_arc_;
  std::vector<int> sink_arc_;
  std::vector<unsigned char> in_set_;
};

inline HdspDecision hdsp_decision(const Graph& graph, std::span<const double> w,
                                  double target) {
  HdspSolver solver(graph);
  return solver.decide(w, target);
}

inline HdspResult hdsp_solve(const Graph& graph, std::span<const double> w,
                             std::span<const int> hint = {}) {
  HdspSolver solver(graph);
  return solver.solve(w, hint);
}

/// Exact densest subgraph: the zero-weight special case.
inline HdspResult densest_subgraph(const Graph& graph) {
  NodeWeights zeros(graph.num_nodes(), 0.0);
  return hdsp_solve(graph, zeros);
}

}  // namespace qds
