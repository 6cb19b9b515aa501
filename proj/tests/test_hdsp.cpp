#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qds/hdsp.hpp"
#include "qds/oracle.hpp"

using namespace qds;
using namespace qds::testing;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("decision oracle on the triangle") {
  Graph g = triangle();
  NodeWeights zero(3, 0.0);

  HdspDecision keep = hdsp_decision(g, zero, 0.5);
  CHECK(keep.nodes == std::vector<int>{0, 1, 2});
  CHECK(keep.margin == doctest::Approx(1.5));  // 3 edges - 3 * 0.5

  HdspDecision drop = hdsp_decision(g, zero, 2.0);
  CHECK(drop.nodes.empty());
  CHECK(drop.margin == doctest::Approx(0.0));
}

TEST_CASE("decision oracle keeps a profitable isolated node") {
  Graph g(1, {});
  NodeWeights w{0.7};
  HdspDecision d = hdsp_decision(g, w, 0.2);
  CHECK(d.nodes == std::vector<int>{0});
  CHECK(d.margin == doctest::Approx(0.5));
}

TEST_CASE("decision oracle maximizes the gate objective exhaustively") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SplitMix64 rng(3000 + seed);
    const int n = 2 + static_cast<int>(rng.below(8));
    Graph g = random_graph(n, 3100 + seed);
    std::vector<double> w = random_weights(n, 3200 + seed, -1.0, 1.0);
    const double gate = 2.0 * rng.uniform() - 0.5;

    double best = 0.0;  // empty set allowed
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> nodes;
      double wsum = 0.0;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) {
          nodes.push_back(v);
          wsum += w[v] - gate;
        }
      best = std::max(best, static_cast<double>(count_edges_in(g, nodes)) + wsum);
    }

    HdspDecision d = hdsp_decision(g, w, gate);
    CHECK(d.margin == doctest::Approx(best).epsilon(1e-9));
    if (!d.nodes.empty()) {
      double achieved = static_cast<double>(count_edges_in(g, d.nodes));
      for (int v : d.nodes) achieved += w[v] - gate;
      CHECK(achieved == doctest::Approx(best).epsilon(1e-9));
    }
  }
}

TEST_CASE("ratio solver on the worked instance with scaled agreements") {
  Graph g = k4path_graph();
  std::vector<double> c = k4path_agreements();
  NodeWeights w(7);
  for (int v = 0; v < 7; ++v) w[v] = 0.75 * c[v];
  HdspResult r = hdsp_solve(g, w);
  CHECK(r.value == doctest::Approx(0.75));  // tie between K4, {a}, K4+{a}

  NodeWeights zero(7, 0.0);
  HdspResult dsp = hdsp_solve(g, zero);
  CHECK(dsp.value == doctest::Approx(1.5));
  CHECK(dsp.nodes == std::vector<int>{3, 4, 5, 6});
}

TEST_CASE("a dominant isolated weight wins") {
  Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});  // K4 + node 4
  NodeWeights w(5, 0.0);
  w[4] = 10.0;
  HdspResult r = hdsp_solve(g, w);
  CHECK(r.nodes == std::vector<int>{4});
  CHECK(r.value == doctest::Approx(10.0));
}

TEST_CASE("densest subgraph special case") {
  CHECK(densest_subgraph(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}))
            .value == doctest::Approx(1.5));
  CHECK(densest_subgraph(Graph(3, {{0, 1}, {1, 2}})).value == doctest::Approx(2.0 / 3.0));
  Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK(densest_subgraph(star).value == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("solver matches the exhaustive oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SplitMix64 rng(4000 + seed);
    const int n = 1 + static_cast<int>(rng.below(10));
    Graph g = random_graph(n, 4100 + seed);
    std::vector<double> w = random_weights(n, 4200 + seed, -1.0, 1.0);

    HdspResult got = hdsp_solve(g, w);
    BruteResult want = brute_hdsp(g, w);
    CHECK(got.value == doctest::Approx(want.value).epsilon(1e-7));

    // the ratio path is strictly increasing and ends optimal
    for (std::size_t i = 1; i < got.value_path.size(); ++i)
      CHECK(got.value_path[i] > got.value_path[i - 1]);
    HdspSolver solver(g);
    CHECK(solver.decide(w, got.value).margin <= 1e-9);

    // whole graph is always a candidate for the zero-weight case
    NodeWeights zero(n, 0.0);
    CHECK(hdsp_solve(g, zero).value >=
          static_cast<double>(g.num_edges()) / g.num_nodes() - 1e-12);
  }
}

TEST_CASE("hint can only help") {
  Graph g = k4path_graph();
  NodeWeights w(7, 0.0);
  std::vector<int> hint{3, 4, 5, 6};
  HdspResult r = hdsp_solve(g, w, hint);
  CHECK(r.value == doctest::Approx(1.5));
  CHECK(r.iterations <= 2);
}

TEST_CASE("solver rejects malformed input") {
  Graph g = triangle();
  NodeWeights w(2, 0.0);
  CHECK_THROWS_AS(hdsp_solve(g, w), input_error);
}
