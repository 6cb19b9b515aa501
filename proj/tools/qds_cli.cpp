// Command-line front end: solve one instance, sweep thresholds, generate
// synthetic instances, run the exhaustive oracle, or emit the reduction
// gadget. See README.md for file formats and examples.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qds/qds.hpp"

namespace {

// Exit codes beyond the usual 0/1: kept distinct so scripts can branch.
constexpr int exit_infeasible_threshold = 2;
constexpr int exit_empty_after_filter = 3;
constexpr int exit_io_error = 4;

// agreement filtering removed every node; distinct from an infeasible theta
struct empty_filter_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::vector<double> parse_query(const std::string& text) {
  std::vector<double> q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      q.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw qds::input_error("bad query component: '" + item + "'");
    }
  }
  if (q.empty()) throw qds::input_error("query vector is empty");
  return q;
}

struct InstanceSpec {
  std::string graph_path;
  std::string opinions_path;
  std::string agreements_path;
  std::string query_text;
  double theta = 0.0;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "edge list file")->required();
    auto* op = cmd->add_option("--opinions", opinions_path,
                               "opinion matrix file (needs --query)");
    auto* ag = cmd->add_option("--agreements", agreements_path,
                               "precomputed agreement file");
    cmd->add_option("--query", query_text, "query vector, e.g. 1,-1")->needs(op);
    op->excludes(ag);
    cmd->add_option("--theta", theta, "agreement threshold")->required();
  }

  std::pair<qds::LoadedGraph, std::vector<double>> load(
      std::optional<std::vector<double>>* query_out = nullptr) const {
    qds::LoadedGraph lg = qds::load_edge_list(graph_path);
    if (!agreements_path.empty()) {
      qds::OpinionData data = qds::load_opinions(agreements_path, true, lg);
      return {std::move(lg), data.agreement_values()};
    }
    if (opinions_path.empty() || query_text.empty())
      throw qds::input_error(
          "provide either --agreements or --opinions with --query");
    qds::OpinionData data = qds::load_opinions(opinions_path, false, lg);
    std::vector<double> q = parse_query(query_text);
    if (query_out) *query_out = q;
    std::vector<double> c = qds::compute_agreements(data, q);
    return {std::move(lg), std::move(c)};
  }
};

void print_summary(const qds::ResultRecord& rec) {
  std::printf("solver=%s |S|=%lld density=%.6g agreement=%.6g", rec.solver.c_str(),
              static_cast<long long>(rec.size), rec.density, rec.agreement);
  if (rec.upper_bound) std::printf(" UB=%.6g", *rec.upper_bound);
  std::printf(" seconds=%.3f\n", rec.wall_seconds);
}

qds::ResultRecord run_algo(const std::string& algo, const qds::Instance& inst,
                           const qds::LoadedGraph& lg, double epsilon, int exact_limit) {
  Timer timer;
  qds::ResultRecord rec;
  if (algo == "lagrange") {
    qds::LagrangeResult r = qds::solve_lagrange(inst, epsilon);
    rec = qds::record_from_solution(r.solution, lg);
    rec.lambda_l = r.lambda_l;
    rec.iterations = r.iterations;
  } else if (algo == "peel") {
    qds::PeelingResult r = qds::solve_peeling(inst, epsilon);
    rec = qds::record_from_solution(r.solution, lg);
    rec.z2_l = r.z2_l;
    rec.iterations = r.iterations;
    rec.dual_bound = r.best_dual_bound;
    rec.half_approx_bound = r.certificate_bound;
  } else if (algo == "af") {
    std::optional<qds::Solution> sol = qds::agreement_filter(inst);
    if (!sol) throw empty_filter_error("agreement filter removed every node");
    rec = qds::record_from_solution(*sol, lg);
  } else if (algo == "exact") {
    std::optional<qds::BruteResult> best = qds::brute_constrained(inst, exact_limit);
    if (!best) throw qds::infeasible_threshold_error("no nonempty subset meets the threshold");
    qds::Solution sol = qds::subset_stats(inst, best->nodes);
    sol.meta.solver = "exact";
    sol.upper_bound = sol.density;  // exact optimum certifies itself
    rec = qds::record_from_solution(sol, lg);
  } else {
    throw qds::input_error("unknown algorithm: " + algo);
  }
  rec.wall_seconds = timer.seconds();
  return rec;
}

int cmd_solve(const InstanceSpec& spec, const std::string& algo, double epsilon,
              int exact_limit, const std::string& out_path, bool json_mode) {
  std::optional<std::vector<double>> query;
  auto [lg, c] = spec.load(&query);
  // lg.graph is consumed; labels in lg stay valid for reporting
  qds::Instance inst(std::move(lg.graph), std::move(c), spec.theta);

  qds::ResultRecord rec = run_algo(algo, inst, lg, epsilon, exact_limit);
  rec.query = query;
  qds::write_result(out_path, rec);
  if (json_mode)
    std::cout << qds::to_json(rec).dump(2) << '\n';
  else
    print_summary(rec);
  return 0;
}

int cmd_bench(const InstanceSpec& spec, const std::string& algo, double epsilon,
              const std::string& sweep, const std::string& out_path) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (std::sscanf(sweep.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
    throw qds::input_error("--theta-sweep expects lo:hi:step with step > 0");
  auto [lg, c] = spec.load();
  const Timer total;
  std::vector<double> thetas;
  for (int i = 0;; ++i) {
    double theta = lo + i * step;
    if (theta > hi + step * 1e-9) break;
    thetas.push_back(theta);
  }

  qds::Graph shared_graph = std::move(lg.graph);
  auto run_point = [&](double theta) -> std::optional<qds::ResultRecord> {
    try {
      qds::Instance inst(shared_graph, c, theta);
      return run_algo(algo, inst, lg, epsilon, 20);
    } catch (const qds::infeasible_threshold_error&) {
      std::cerr << "theta=" << theta << ": threshold infeasible, row skipped\n";
      return std::nullopt;
    }
  };

  // sweep points are independent; run them concurrently and emit in order
  std::vector<std::future<std::optional<qds::ResultRecord>>> futures;
  futures.reserve(thetas.size());
  for (double theta : thetas)
    futures.push_back(std::async(std::launch::async, run_point, theta));

  std::ofstream out(out_path);
  if (!out) throw qds::input_error("cannot write CSV file: " + out_path);
  out << "theta,density,agreement,size,upper_bound,seconds\n";
  char buf[256];
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    std::optional<qds::ResultRecord> rec = futures[i].get();
    if (!rec) continue;
    std::string ub = rec->upper_bound ? qds::detail::format_double(*rec->upper_bound) : "";
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%lld,%s,%.6f\n", thetas[i],
                  rec->density, rec->agreement, static_cast<long long>(rec->size),
                  ub.c_str(), rec->wall_seconds);
    out << buf;
  }
  if (!out) throw qds::input_error("write failed: " + out_path);
  std::printf("wrote %s (%zu thetas, %.3f s total)\n", out_path.c_str(), thetas.size(),
              total.seconds());
  return 0;
}

int cmd_gen(int n, std::int64_t m, std::uint64_t seed, bool bimodal, int opinion_dim,
            bool spread_is_stddev, const std::string& prefix) {
  std::printf("seed=%llu\n", static_cast<unsigned long long>(seed));
  qds::Graph graph = qds::gen_gnm(n, m, seed);
  qds::LoadedGraph lg = qds::from_dense_graph(std::move(graph));
  qds::write_edge_list(prefix + ".edges", lg);
  if (bimodal) {
    std::vector<double> c = qds::gen_bimodal_agreements(n, seed + 1, spread_is_stddev);
    qds::write_agreements(prefix + ".agreements", lg, c);
    std::printf("wrote %s.edges and %s.agreements\n", prefix.c_str(), prefix.c_str());
  } else {
    qds::OpinionData data =
        qds::OpinionData::matrix(n, opinion_dim, qds::gen_uniform_opinions(n, opinion_dim, seed + 1));
    qds::write_opinions(prefix + ".opinions", lg, data);
    std::printf("wrote %s.edges and %s.opinions\n", prefix.c_str(), prefix.c_str());
  }
  return 0;
}

int cmd_oracle(const InstanceSpec& spec, int max_n, const std::string& out_path,
               bool json_mode) {
  std::optional<std::vector<double>> query;
  auto [lg, c] = spec.load(&query);
  qds::Instance inst(std::move(lg.graph), std::move(c), spec.theta);
  Timer timer;
  std::optional<qds::BruteResult> best = qds::brute_constrained(inst, max_n);
  if (!best) throw qds::infeasible_threshold_error("no nonempty subset meets the threshold");
  qds::Solution sol = qds::subset_stats(inst, best->nodes);
  sol.meta.solver = "oracle";
  sol.meta.theta = spec.theta;
  sol.upper_bound = sol.density;
  qds::ResultRecord rec = qds::record_from_solution(sol, lg);
  rec.query = query;
  rec.wall_seconds = timer.seconds();
  qds::write_result(out_path, rec);
  if (json_mode)
    std::cout << qds::to_json(rec).dump(2) << '\n';
  else
    print_summary(rec);
  return 0;
}

int cmd_reduce(const std::string& graph_path, int k, const std::string& prefix) {
  qds::LoadedGraph lg = qds::load_edge_list(graph_path);
  const int n = lg.graph.num_nodes();
  qds::Instance gadget = qds::size_bound_gadget(lg.graph, k);

  qds::LoadedGraph widened;
  widened.node_ids = lg.node_ids;
  widened.id_index = lg.id_index;
  for (int i = 0; i < k; ++i) {
    std::string label = "aux" + std::to_string(i);
    while (widened.id_index.contains(label)) label += "_";
    widened.id_index.emplace(label, n + i);
    widened.node_ids.push_back(label);
  }
  widened.graph = std::move(gadget.graph);
  qds::write_edge_list(prefix + ".edges", widened);
  qds::write_agreements(prefix + ".agreements", widened, gadget.c);
  std::printf("wrote %s.edges and %s.agreements (solve with --theta 0.5; "
              "optimum equals half the size-%d-bounded optimum)\n",
              prefix.c_str(), prefix.c_str(), k);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query-constrained densest subgraph toolkit"};
  app.require_subcommand(1);

  InstanceSpec solve_spec;
  std::string solve_algo = "peel";
  double solve_epsilon = 1e-6;
  int exact_limit = 20;
  std::string solve_out = "qds_result.json";
  bool solve_json = false;
  auto* solve = app.add_subcommand("solve", "run one solver on one instance");
  solve_spec.add_options(solve);
  solve->add_option("--algo", solve_algo, "lagrange | peel | af | exact")
      ->check(CLI::IsMember({"lagrange", "peel", "af", "exact"}))
      ->capture_default_str();
  solve->add_option("--epsilon", solve_epsilon, "bisection precision")
      ->capture_default_str();
  solve->add_option("--exact-limit", exact_limit,
                    "node cap for --algo exact")->capture_default_str();
  solve->add_option("--out", solve_out, "result record path")->capture_default_str();
  solve->add_flag("--json", solve_json, "print the full record to stdout");

  InstanceSpec bench_spec;
  std::string bench_algo = "peel";
  double bench_epsilon = 1e-6;
  std::string bench_sweep;
  std::string bench_out = "qds_bench.csv";
  auto* bench = app.add_subcommand("bench", "sweep theta and emit a CSV");
  bench_spec.add_options(bench);
  bench->add_option("--theta-sweep", bench_sweep, "lo:hi:step")->required();
  bench->add_option("--algo", bench_algo, "lagrange | peel | af")
      ->check(CLI::IsMember({"lagrange", "peel", "af"}))
      ->capture_default_str();
  bench->add_option("--epsilon", bench_epsilon, "bisection precision")
      ->capture_default_str();
  bench->add_option("--out", bench_out, "CSV path")->capture_default_str();
  bench->get_option("--theta")->required(false);

  int gen_n = 0;
  std::int64_t gen_m = 0;
  std::uint64_t gen_seed = 1;
  bool gen_bimodal = false;
  int gen_dim = 0;
  bool gen_stddev = false;
  std::string gen_prefix = "qds_instance";
  auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--nodes", gen_n, "node count")->required();
  gen->add_option("--edges", gen_m, "edge count")->required();
  gen->add_option("--seed", gen_seed, "PRNG seed")->capture_default_str();
  auto* bim = gen->add_flag("--bimodal", gen_bimodal,
                            "two-population normal agreements");
  gen->add_option("--uniform-opinions", gen_dim,
                  "opinion matrix with this dimension, entries uniform in [-1,1]")
      ->excludes(bim);
  gen->add_flag("--stddev", gen_stddev,
                "read the bimodal spread parameters as standard deviations");
  gen->add_option("--out-prefix", gen_prefix, "output path prefix")
      ->capture_default_str();

  InstanceSpec oracle_spec;
  int oracle_max_n = 20;
  std::string oracle_out = "qds_oracle.json";
  bool oracle_json = false;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum (small graphs)");
  oracle_spec.add_options(oracle);
  oracle->add_option("--max-n", oracle_max_n, "refuse graphs larger than this")
      ->capture_default_str();
  oracle->add_option("--out", oracle_out, "result record path")->capture_default_str();
  oracle->add_flag("--json", oracle_json, "print the full record to stdout");

  std::string reduce_graph;
  int reduce_k = 1;
  std::string reduce_prefix = "qds_gadget";
  auto* reduce = app.add_subcommand(
      "reduce", "emit the size-bounded-problem gadget instance");
  reduce->add_option("--graph", reduce_graph, "edge list file")->required();
  reduce->add_option("--k", reduce_k, "size bound")->required();
  reduce->add_option("--out-prefix", reduce_prefix, "output path prefix")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(solve_spec, solve_algo, solve_epsilon, exact_limit, solve_out,
                       solve_json);
    if (bench->parsed())
      return cmd_bench(bench_spec, bench_algo, bench_epsilon, bench_sweep, bench_out);
    if (gen->parsed()) {
      if (!gen_bimodal && gen_dim <= 0)
        throw qds::input_error("choose --bimodal or --uniform-opinions D");
      return cmd_gen(gen_n, gen_m, gen_seed, gen_bimodal, gen_dim, gen_stddev,
                     gen_prefix);
    }
    if (oracle->parsed())
      return cmd_oracle(oracle_spec, oracle_max_n, oracle_out, oracle_json);
    if (reduce->parsed()) return cmd_reduce(reduce_graph, reduce_k, reduce_prefix);
  } catch (const qds::infeasible_threshold_error& e) {
    std::cerr << "infeasible threshold: " << e.what() << '\n';
    return exit_infeasible_threshold;
  } catch (const empty_filter_error& e) {
    std::cerr << "empty after filter: " << e.what() << '\n';
    return exit_empty_after_filter;
  } catch (const qds::input_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return exit_io_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
