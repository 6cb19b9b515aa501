#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qds {

// Absolute tolerance for feasibility checks (agreement >= theta).
inline constexpr double feasibility_tol = 1e-9;

// Bad files, dimension mismatches, invalid arguments.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// theta lies strictly above every agreement value, so no nonempty subset can
// satisfy the constraint.
class infeasible_threshold_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All agreement values coincide; the smallest pairwise gap is undefined.
class degenerate_agreements_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph in CSR form. Node ids are dense ints in
/// [0, n). Self-loops and duplicate edges in the input are dropped and
/// counted, never kept silently.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
    if (n < 0) throw input_error("node count must be nonnegative");
    for (auto& [u, v] : edge_list) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw input_error("edge endpoint out of range");
      if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edges_.reserve(edge_list.size());
    for (const auto& e : edge_list) {
      if (e.first == e.second) {
        ++dropped_self_loops_;
      } else if (!edges_.empty() && edges_.back() == e) {
        ++dropped_duplicates_;
      } else {
        edges_.push_back(e);
      }
    }
    degree_.assign(n_, 0);
    for (const auto& [u, v] : edges_) {
      ++degree_[u];
      ++degree_[v];
    }
    adj_offset_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) adj_offset_[v + 1] = adj_offset_[v] + degree_[v];
    adj_.resize(2 * edges_.size());
    std::vector<int> fill = adj_offset_;
    for (const auto& [u, v] : edges_) {
      adj_[fill[u]++] = v;
      adj_[fill[v]++] = u;
    }
    for (int v = 0; v < n_; ++v)
      std::sort(adj_.begin() + adj_offset_[v], adj_.begin() + adj_offset_[v + 1]);
  }

  int num_nodes() const { return n_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }

  int degree(int v) const { return degree_[v]; }

  int max_degree() const {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
  }

  std::span<const int> neighbors(int v) const {
    return {adj_.data() + adj_offset_[v],
            static_cast<std::size_t>(degree_[v])};
  }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::int64_t dropped_self_loops() const { return dropped_self_loops_; }
  std::int64_t dropped_duplicates() const { return dropped_duplicates_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> adj_;
  std::vector<int> adj_offset_{0};
  std::vector<int> degree_;
  std::int64_t dropped_self_loops_ = 0;
  std::int64_t dropped_duplicates_ = 0;
};

/// Per-node opinion vectors (n x d matrix) or precomputed per-node agreement
/// scalars. Exactly one of the two forms is held.
class OpinionData {
 public:
  static OpinionData matrix(int n, int d, std::vector<double> values) {
    if (n < 0 || d < 1) throw input_error("opinion matrix needs n >= 0, d >= 1");
    if (values.size() != static_cast<std::size_t>(n) * d)
      throw input_error("opinion matrix has wrong value count");
    OpinionData p;
    p.n_ = n;
    p.d_ = d;
    p.values_ = std::move(values);
    p.is_matrix_ = true;
    return p;
  }

  static OpinionData agreements(std::vector<double> c) {
    OpinionData p;
    p.n_ = static_cast<int>(c.size());
    p.d_ = 0;
    p.values_ = std::move(c);
    p.is_matrix_ = false;
    return p;
  }

  bool is_matrix() const { return is_matrix_; }
  int num_nodes() const { return n_; }
  int dim() const { return d_; }

  std::span<const double> row(int v) const {
    if (!is_matrix_) throw input_error("opinion data holds agreements, not vectors");
    return {values_.data() + static_cast<std::size_t>(v) * d_,
            static_cast<std::size_t>(d_)};
  }

  const std::vector<double>& agreement_values() const {
    if (is_matrix_) throw input_error("opinion data holds vectors, not agreements");
    return values_;
  }

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<double> values_;
  bool is_matrix_ = false;
};

/// c_v = p_v . q for every node.
inline std::vector<double> compute_agreements(const OpinionData& opinions,
                                              std::span<const double> query) {
  if (!opinions.is_matrix())
    throw input_error("agreements can only be computed from opinion vectors");
  if (static_cast<int>(query.size()) != opinions.dim())
    throw input_error("query dimension does not match opinion dimension");
  std::vector<double> c(opinions.num_nodes());
  for (int v = 0; v < opinions.num_nodes(); ++v) {
    auto row = opinions.row(v);
    double dot = 0.0;
    for (int j = 0; j < opinions.dim(); ++j) dot += row[j] * query[j];
    c[v] = dot;
  }
  return c;
}

/// Problem input after query application: graph + agreements + threshold.
struct Instance {
  Graph graph;
  std::vector<double> c;
  double theta = 0.0;
  // Whether theta < max_v c_v held at construction (solver precondition).
  bool theta_below_max = false;

  Instance(Graph g, std::vector<double> agreements, double threshold)
      : graph(std::move(g)), c(std::move(agreements)), theta(threshold) {
    if (graph.num_nodes() < 1) throw input_error("instance needs at least one node");
    if (c.size() != static_cast<std::size_t>(graph.num_nodes()))
      throw input_error("agreement vector length does not match node count");
    theta_below_max = theta < max_agreement();
  }

  double max_agreement() const { return *std::max_element(c.begin(), c.end()); }
  double min_agreement() const { return *std::min_element(c.begin(), c.end()); }

  int argmax_agreement() const {
    return static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin());
  }
};

struct SolverMeta {
  std::string solver;
  double theta = 0.0;
  double epsilon = 0.0;
  std::optional<double> lambda_r;
  std::optional<double> z2_r;
};

/// A node subset with its cached statistics.
struct Solution {
  std::vector<int> nodes;  // sorted dense ids
  std::int64_t size = 0;
  std::int64_t internal_edges = 0;
  double density = 0.0;
  double agreement = 0.0;
  bool feasible = false;
  std::optional<double> upper_bound;
  SolverMeta meta;
};

/// Exact statistics of S: |E(S)|, density, mean agreement, feasibility.
inline Solution subset_stats(const Graph& graph, std::span<const double> c,
                             double theta, std::span<const int> subset) {
  if (subset.empty()) throw input_error("subset must be nonempty");
  Solution sol;
  sol.nodes.assign(subset.begin(), subset.end());
  std::sort(sol.nodes.begin(), sol.nodes.end());
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    int v = sol.nodes[i];
    if (v < 0 || v >= graph.num_nodes()) throw input_error("subset node out of range");
    if (i > 0 && sol.nodes[i - 1] == v) throw input_error("subset contains duplicates");
  }
  std::vector<unsigned char> in_set(graph.num_nodes(), 0);
  for (int v : sol.nodes) in_set[v] = 1;
  std::int64_t twice_edges = 0;
  double agreement_sum = 0.0;
  for (int v : sol.nodes) {
    agreement_sum += c[v];
    for (int u : graph.neighbors(v))
      if (in_set[u]) ++twice_edges;
  }
  sol.size = static_cast<std::int64_t>(sol.nodes.size());
  sol.internal_edges = twice_edges / 2;
  sol.density = static_cast<double>(sol.internal_edges) / static_cast<double>(sol.size);
  sol.agreement = agreement_sum / static_cast<double>(sol.size);
  sol.feasible = sol.agreement >= theta - feasibility_tol;
  sol.meta.theta = theta;
  return sol;
}

inline Solution subset_stats(const Instance& inst, std::span<const int> subset) {
  return subset_stats(inst.graph, inst.c, inst.theta, subset);
}

/// Smallest nonzero pairwise gap between agreement values, via sort-and-scan.
inline double delta_min(std::span<const double> c) {
  if (c.size() < 2) throw degenerate_agreements_error("need at least two agreement values");
  std::vector<double> sorted(c.begin(), c.end());
  std::sort(sorted.begin(), sorted.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0 && gap < best) best = gap;
  }
  if (!std::isfinite(best))
    throw degenerate_agreements_error("all agreement values are equal");
  return best;
}

inline bool all_agreements_equal(std::span<const double> c) {
  return std::adjacent_find(c.begin(), c.end(),
                            [](double a, double b) { return a != b; }) == c.end();
}

}  // namespace qds
