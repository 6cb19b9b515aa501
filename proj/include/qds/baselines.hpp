#pragma once

#include <optional>
#include <vector>

#include "qds/graph.hpp"
#include "qds/hdsp.hpp"
#include "qds/lagrange.hpp"

namespace qds {

/// Agreement filtering: keep only nodes whose own agreement clears the
/// threshold (boundary nodes stay), then return the densest subgraph of the
/// induced graph. Empty filter result is reported as nullopt, not an error.
inline std::optional<Solution> agreement_filter(const Instance& inst) {
  std::vector<int> keep;
  for (int v = 0; v < inst.graph.num_nodes(); ++v)
    if (inst.c[v] >= inst.theta) keep.push_back(v);
  if (keep.empty()) return std::nullopt;
  Solution sol = subset_stats(inst, detail::densest_within(inst.graph, keep));
  sol.meta.solver = "af";
  sol.meta.theta = inst.theta;
  return sol;
}

}  // namespace qds
