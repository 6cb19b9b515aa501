#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qds/graph.hpp"

namespace qds {

struct MaxFlowResult {
  double value = 0.0;
  std::vector<int> source_side;  // s-side of a minimum cut, always contains s
};

/// s-t network with paired forward/reverse arcs and real capacities.
/// Arc ids come in pairs: arc id^1 is the reverse of arc id.
class FlowNetwork {
 public:
  struct Arc {
    int from;
    int to;
    double capacity;
    double flow;
  };

  FlowNetwork(int node_count, int source, int sink)
      : n_(node_count), source_(source), sink_(sink) {
    if (node_count < 2) throw input_error("flow network needs at least two nodes");
    if (source < 0 || source >= node_count || sink < 0 || sink >= node_count)
      throw input_error("source/sink out of range");
    if (source == sink) throw input_error("source and sink must differ");
  }

  int add_arc(int from, int to, double capacity, double reverse_capacity = 0.0) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
      throw input_error("arc endpoint out of range");
    if (capacity < 0.0 || reverse_capacity < 0.0)
      throw input_error("arc capacity must be nonnegative");
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, capacity, 0.0});
    arcs_.push_back({to, from, reverse_capacity, 0.0});
    csr_dirty_ = true;
    return id;
  }

  void set_capacity(int arc_id, double capacity) {
    if (capacity < 0.0) throw input_error("arc capacity must be nonnegative");
    arcs_[arc_id].capacity = capacity;
  }

  void reset_flows() {
    for (Arc& a : arcs_) a.flow = 0.0;
  }

  int node_count() const { return n_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int id) const { return arcs_[id]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  friend MaxFlowResult max_flow(FlowNetwork& net);

 private:
  static constexpr double residual_eps = 1e-11;

  double residual(int id) const { return arcs_[id].capacity - arcs_[id].flow; }

  void build_csr() {
    if (!csr_dirty_) return;
    offset_.assign(n_ + 1, 0);
    for (const Arc& a : arcs_) ++offset_[a.from + 1];
    for (int v = 0; v < n_; ++v) offset_[v + 1] += offset_[v];
    arc_of_.resize(arcs_.size());
    std::vector<int> fill(offset_.begin(), offset_.end() - 1);
    for (int id = 0; id < static_cast<int>(arcs_.size()); ++id)
      arc_of_[fill[arcs_[id].from]++] = id;
    level_.resize(n_);
    iter_.resize(n_);
    csr_dirty_ = false;
  }

  bool bfs_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    bfs_queue_.clear();
    bfs_queue_.push_back(source_);
    level_[source_] = 0;
    for (std::size_t head = 0; head < bfs_queue_.size(); ++head) {
      int v = bfs_queue_[head];
      for (int k = offset_[v]; k < offset_[v + 1]; ++k) {
        int id = arc_of_[k];
        int to = arcs_[id].to;
        if (residual(id) > residual_eps && level_[to] < 0) {
          level_[to] = level_[v] + 1;
          bfs_queue_.push_back(to);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  // One blocking flow over the level graph, iterative to keep stack depth flat.
  double blocking_flow() {
    double total = 0.0;
    std::vector<int>& path = path_;  // arc ids from source to current node
    path.clear();
    int v = source_;
    for (;;) {
      if (v == sink_) {
        double bottleneck = std::numeric_limits<double>::infinity();
        for (int id : path) bottleneck = std::min(bottleneck, residual(id));
        for (int id : path) {
          arcs_[id].flow += bottleneck;
          arcs_[id ^ 1].flow -= bottleneck;
        }
        total += bottleneck;
        // retreat to the first saturated arc on the path
        std::size_t cut = 0;
        while (cut < path.size() && residual(path[cut]) > residual_eps) ++cut;
        path.resize(cut);
        v = path.empty() ? source_ : arcs_[path.back()].to;
        continue;
      }
      bool advanced = false;
      for (int& k = iter_[v]; k < offset_[v + 1]; ++k) {
        int id = arc_of_[k];
        if (residual(id) > residual_eps && level_[arcs_[id].to] == level_[v] + 1) {
          path.push_back(id);
          v = arcs_[id].to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (v == source_) break;
      level_[v] = -1;  // dead end; prune from this phase
      v = path.empty() ? source_ : arcs_[path.back()].from;
      if (!path.empty()) path.pop_back();
    }
    return total;
  }

  int n_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
  bool csr_dirty_ = true;
  std::vector<int> offset_;
  std::vector<int> arc_of_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<int> bfs_queue_;
  std::vector<int> path_;
};

/// Exact max flow / min cut. The cut side is read from residual reachability
/// of the source, so it is the inclusion-minimal s-side. Capacities above
/// 1e6 are rescaled internally so absolute tolerances stay meaningful.
inline MaxFlowResult max_flow(FlowNetwork& net) {
  net.build_csr();
  net.reset_flows();

  double max_cap = 0.0;
  for (const FlowNetwork::Arc& a : net.arcs_) max_cap = std::max(max_cap, a.capacity);
  const double scale = max_cap > 1e6 ? 1e6 / max_cap : 1.0;
  if (scale != 1.0)
    for (FlowNetwork::Arc& a : net.arcs_) a.capacity *= scale;

  while (net.bfs_levels()) {
    for (int v = 0; v < net.n_; ++v) net.iter_[v] = net.offset_[v];
    net.blocking_flow();
  }

  MaxFlowResult result;
  // value from the final flows rather than accumulated augmentations
  for (int k = net.offset_[net.source_]; k < net.offset_[net.source_ + 1]; ++k)
    result.value += net.arcs_[net.arc_of_[k]].flow;

  std::vector<char> reachable(net.n_, 0);
  std::vector<int> queue{net.source_};
  reachable[net.source_] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int k = net.offset_[v]; k < net.offset_[v + 1]; ++k) {
      int id = net.arc_of_[k];
      int to = net.arcs_[id].to;
      if (!reachable[to] && net.residual(id) > FlowNetwork::residual_eps) {
        reachable[to] = 1;
        queue.push_back(to);
      }
    }
  }
  for (int v = 0; v < net.n_; ++v)
    if (reachable[v]) result.source_side.push_back(v);

  if (scale != 1.0) {
    for (FlowNetwork::Arc& a : net.arcs_) {
      a.capacity /= scale;
      a.flow /= scale;
    }
    result.value /= scale;
  }
  return result;
}

}  // namespace qds
