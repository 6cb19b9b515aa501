#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qds/graph.hpp"

namespace qds {

/// Graph plus the mapping between original node labels and dense ids.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> node_ids;               // dense id -> label
  std::unordered_map<std::string, int> id_index;   // label -> dense id

  int require(const std::string& label) const {
    auto it = id_index.find(label);
    if (it == id_index.end()) throw input_error("unknown node id: " + label);
    return it->second;
  }
};

inline LoadedGraph from_dense_graph(Graph graph) {
  LoadedGraph lg;
  lg.node_ids.reserve(graph.num_nodes());
  for (int v = 0; v < graph.num_nodes(); ++v) {
    lg.node_ids.push_back(std::to_string(v));
    lg.id_index.emplace(lg.node_ids.back(), v);
  }
  lg.graph = std::move(graph);
  return lg;
}

/// Text edge list: one `u v` pair per line, `#` starts a comment line, a line
/// with a single label declares an isolated node. Labels are arbitrary
/// whitespace-free strings, remapped to dense ids in first-seen order.
/// Self-loops and repeated edges are dropped (counted on the Graph).
inline LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file: " + path);
  LoadedGraph lg;
  auto intern = [&lg](const std::string& label) {
    auto [it, fresh] = lg.id_index.emplace(label, static_cast<int>(lg.node_ids.size()));
    if (fresh) lg.node_ids.push_back(label);
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a) || a.front() == '#') continue;
    if (!(fields >> b)) {
      intern(a);  // isolated node declaration
      continue;
    }
    if (fields >> extra)
      throw input_error(path + ":" + std::to_string(line_no) +
                        ": expected at most two tokens per line");
    const int u = intern(a);  // sequenced: first-seen order defines dense ids
    const int v = intern(b);
    edges.emplace_back(u, v);
  }
  lg.graph = Graph(static_cast<int>(lg.node_ids.size()), std::move(edges));
  return lg;
}

inline void write_edge_list(const std::string& path, const LoadedGraph& lg) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write graph file: " + path);
  std::vector<char> mentioned(lg.graph.num_nodes(), 0);
  for (const auto& [u, v] : lg.graph.edges()) {
    mentioned[u] = mentioned[v] = 1;
    out << lg.node_ids[u] << ' ' << lg.node_ids[v] << '\n';
  }
  for (int v = 0; v < lg.graph.num_nodes(); ++v)
    if (!mentioned[v]) out << lg.node_ids[v] << '\n';
  if (!out) throw input_error("write failed: " + path);
}

namespace detail {

// 17 significant digits: enough for doubles to survive a text round trip
inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace detail

/// Whitespace-separated opinion file: node label then d values (matrix mode)
/// or exactly one value (agreement mode). Every graph node must be covered;
/// rows for labels outside the graph are ignored.
inline OpinionData load_opinions(const std::string& path, bool agreement_mode,
                                 const LoadedGraph& lg) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open opinion file: " + path);
  const int n = lg.graph.num_nodes();
  int dim = agreement_mode ? 1 : -1;
  std::vector<double> values;
  std::vector<char> covered(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string label;
    if (!(fields >> label) || label.front() == '#') continue;
    std::vector<double> row;
    double x;
    while (fields >> x) row.push_back(x);
    if (!fields.eof())
      throw input_error(path + ":" + std::to_string(line_no) + ": malformed number");
    if (row.empty())
      throw input_error(path + ":" + std::to_string(line_no) + ": no values in row");
    if (dim < 0) {
      dim = static_cast<int>(row.size());
      values.assign(static_cast<std::size_t>(n) * dim, 0.0);
    } else if (static_cast<int>(row.size()) != dim) {
      throw input_error(path + ":" + std::to_string(line_no) +
                        ": inconsistent value count");
    }
    auto it = lg.id_index.find(label);
    if (it == lg.id_index.end()) continue;
    if (values.empty()) values.assign(static_cast<std::size_t>(n) * dim, 0.0);
    for (int j = 0; j < dim; ++j)
      values[static_cast<std::size_t>(it->second) * dim + j] = row[j];
    covered[it->second] = 1;
  }
  if (dim < 0) throw input_error(path + ": no data rows");
  for (int v = 0; v < n; ++v)
    if (!covered[v])
      throw input_error(path + ": node " + lg.node_ids[v] + " has no opinion row");
  if (agreement_mode) return OpinionData::agreements(std::move(values));
  return OpinionData::matrix(n, dim, std::move(values));
}

inline void write_opinions(const std::string& path, const LoadedGraph& lg,
                           const OpinionData& opinions) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write opinion file: " + path);
  for (int v = 0; v < lg.graph.num_nodes(); ++v) {
    out << lg.node_ids[v];
    if (opinions.is_matrix()) {
      for (double x : opinions.row(v)) out << '\t' << detail::format_double(x);
    } else {
      out << '\t' << detail::format_double(opinions.agreement_values()[v]);
    }
    out << '\n';
  }
  if (!out) throw input_error("write failed: " + path);
}

inline void write_agreements(const std::string& path, const LoadedGraph& lg,
                             const std::vector<double>& c) {
  write_opinions(path, lg, OpinionData::agreements(c));
}

/// One solver run, serialized as JSON. Optional fields are present only when
/// the producing solver defines them.
struct ResultRecord {
  std::string solver;
  double theta = 0.0;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> query;
  std::optional<double> lambda_r;
  std::optional<double> lambda_l;
  std::optional<double> z2_r;
  std::optional<double> z2_l;
  std::optional<int> iterations;
  std::vector<std::string> nodes;
  std::int64_t size = 0;
  std::int64_t internal_edges = 0;
  double density = 0.0;
  double agreement = 0.0;
  bool feasible = false;
  std::optional<double> upper_bound;
  std::optional<double> dual_bound;
  std::optional<double> half_approx_bound;
  double wall_seconds = 0.0;
};

inline nlohmann::json to_json(const ResultRecord& rec) {
  nlohmann::json j;
  j["solver"] = rec.solver;
  j["theta"] = rec.theta;
  if (rec.epsilon) j["epsilon"] = *rec.epsilon;
  if (rec.query) j["query"] = *rec.query;
  if (rec.lambda_r) j["lambda_r"] = *rec.lambda_r;
  if (rec.lambda_l) j["lambda_l"] = *rec.lambda_l;
  if (rec.z2_r) j["z2_r"] = *rec.z2_r;
  if (rec.z2_l) j["z2_l"] = *rec.z2_l;
  if (rec.iterations) j["iterations"] = *rec.iterations;
  j["nodes"] = rec.nodes;
  j["size"] = rec.size;
  j["internal_edges"] = rec.internal_edges;
  j["density"] = rec.density;
  j["agreement"] = rec.agreement;
  j["feasible"] = rec.feasible;
  if (rec.upper_bound) j["upper_bound"] = *rec.upper_bound;
  if (rec.dual_bound) j["dual_bound"] = *rec.dual_bound;
  if (rec.half_approx_bound) j["half_approx_bound"] = *rec.half_approx_bound;
  j["wall_seconds"] = rec.wall_seconds;
  return j;
}

inline ResultRecord record_from_json(const nlohmann::json& j) {
  ResultRecord rec;
  rec.solver = j.at("solver").get<std::string>();
  rec.theta = j.at("theta").get<double>();
  if (j.contains("epsilon")) rec.epsilon = j["epsilon"].get<double>();
  if (j.contains("query")) rec.query = j["query"].get<std::vector<double>>();
  if (j.contains("lambda_r")) rec.lambda_r = j["lambda_r"].get<double>();
  if (j.contains("lambda_l")) rec.lambda_l = j["lambda_l"].get<double>();
  if (j.contains("z2_r")) rec.z2_r = j["z2_r"].get<double>();
  if (j.contains("z2_l")) rec.z2_l = j["z2_l"].get<double>();
  if (j.contains("iterations")) rec.iterations = j["iterations"].get<int>();
  rec.nodes = j.at("nodes").get<std::vector<std::string>>();
  rec.size = j.at("size").get<std::int64_t>();
  rec.internal_edges = j.at("internal_edges").get<std::int64_t>();
  rec.density = j.at("density").get<double>();
  rec.agreement = j.at("agreement").get<double>();
  rec.feasible = j.at("feasible").get<bool>();
  if (j.contains("upper_bound")) rec.upper_bound = j["upper_bound"].get<double>();
  if (j.contains("dual_bound")) rec.dual_bound = j["dual_bound"].get<double>();
  if (j.contains("half_approx_bound"))
    rec.half_approx_bound = j["half_approx_bound"].get<double>();
  rec.wall_seconds = j.at("wall_seconds").get<double>();
  return rec;
}

inline void write_result(const std::string& path, const ResultRecord& rec) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write result file: " + path);
  out << to_json(rec).dump(2) << '\n';
  if (!out) throw input_error("write failed: " + path);
}

inline ResultRecord read_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open result file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(path + ": " + e.what());
  }
  return record_from_json(j);
}

/// Builds the record skeleton shared by every solver from a Solution.
inline ResultRecord record_from_solution(const Solution& sol, const LoadedGraph& lg) {
  ResultRecord rec;
  rec.solver = sol.meta.solver;
  rec.theta = sol.meta.theta;
  if (sol.meta.epsilon > 0.0) rec.epsilon = sol.meta.epsilon;
  if (sol.meta.lambda_r) rec.lambda_r = sol.meta.lambda_r;
  if (sol.meta.z2_r) rec.z2_r = sol.meta.z2_r;
  rec.nodes.reserve(sol.nodes.size());
  for (int v : sol.nodes) rec.nodes.push_back(lg.node_ids[v]);
  rec.size = sol.size;
  rec.internal_edges = sol.internal_edges;
  rec.density = sol.density;
  rec.agreement = sol.agreement;
  rec.feasible = sol.feasible;
  rec.upper_bound = sol.upper_bound;
  return rec;
}

}  // namespace qds
