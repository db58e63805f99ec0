#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vlo/decomposition.hpp"
#include "vlo/generators.hpp"
#include "vlo/harness.hpp"

using namespace vlo;

namespace {

constexpr int kUsageError = 1;
constexpr int kViolation = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when it is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  write(out);
}

std::pair<Length, Length> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("expected lo:hi, got " + text);
  return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  if (out.empty()) throw UsageError("empty size list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic vertex-labeled distance oracles for planar graphs"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string weights = "1:1";
  std::string kind = "grid";
  std::string out_path;
  auto* gen_cmd = app.add_subcommand("gen", "generate a labeled planar graph");
  gen_cmd->add_option("--kind", kind, "grid | triangulated-random");
  gen_cmd->add_option("--n", gen.n, "vertex count")->required();
  gen_cmd->add_option("--weights", weights, "edge length range lo:hi");
  gen_cmd->add_option("--labels", gen.labels, "label count");
  gen_cmd->add_flag("--directed", gen.directed, "independent lengths per direction");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", out_path);

  std::string graph_path, workload_path, oracle = "fast-query", epsilon = "1/2", dump_tree;
  bool verify = false, timing = true;
  auto* run_cmd = app.add_subcommand("run", "replay a workload against an oracle");
  run_cmd->add_option("--graph", graph_path)->required();
  run_cmd->add_option("--workload", workload_path)->required();
  run_cmd->add_option("--oracle", oracle, "fast-query | directed | fast-update | exact");
  run_cmd->add_option("--epsilon", epsilon, "accuracy as a decimal or p/q");
  run_cmd->add_flag("--verify", verify, "check every answer against the exact baseline");
  run_cmd->add_flag("!--no-timing", timing, "omit wall times from the report");
  run_cmd->add_option("--dump-tree", dump_tree, "write the decomposition of the graph to FILE");
  run_cmd->add_option("--out", out_path);

  WorkloadOptions wl;
  std::string mix = "1:1";
  bool from_label = false;
  auto* wl_cmd = app.add_subcommand("workload", "generate a relabel/query workload");
  wl_cmd->add_option("--graph", graph_path)->required();
  wl_cmd->add_option("--ops", wl.ops);
  wl_cmd->add_option("--mix", mix, "queries:updates");
  wl_cmd->add_option("--labels", wl.labels, "label universe for relabels");
  wl_cmd->add_flag("--from-label", from_label, "emit label-to-vertex queries");
  wl_cmd->add_option("--seed", wl.seed);
  wl_cmd->add_option("--out", out_path);

  BenchOptions bench;
  std::string sizes = "256,1024", oracles = "fast-query,directed,fast-update";
  auto* bench_cmd = app.add_subcommand("bench", "instrumented counters against n");
  bench_cmd->add_option("--kind", kind, "grid | triangulated-random");
  bench_cmd->add_option("--sizes", sizes, "comma separated vertex counts");
  bench_cmd->add_option("--oracles", oracles, "comma separated oracle names");
  bench_cmd->add_option("--epsilon", epsilon);
  bench_cmd->add_option("--reps", bench.reps);
  bench_cmd->add_option("--ops", bench.ops);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen_cmd) {
      gen.kind = parse_graph_kind(kind);
      std::tie(gen.min_length, gen.max_length) = parse_range(weights);
      LabeledGraph g = generate_graph(gen);
      with_output(out_path, [&](std::ostream& o) { write_graph(o, g); });
      return 0;
    }
    if (*run_cmd) {
      LabeledGraph g = load_graph(graph_path);
      std::ifstream in(workload_path);
      if (!in) throw UsageError("cannot open " + workload_path);
      Workload w = read_workload(in, g.vertex_count());
      if (!dump_tree.empty()) {
        DecompositionTree tree = decompose(g, Embedding::from_coordinates(g));
        with_output(dump_tree, [&](std::ostream& o) { tree.dump(o); });
      }
      TrialReport r = run_trial(g, w, parse_oracle_kind(oracle), Rational::parse(epsilon), verify);
      with_output(out_path, [&](std::ostream& o) { o << to_json(r, timing).dump(2) << '\n'; });
      if (!r.ok()) {
        std::cerr << "bound violation at op " << *r.violation << ": " << r.violation_detail << '\n';
        return kViolation;
      }
      return 0;
    }
    if (*wl_cmd) {
      LabeledGraph g = load_graph(graph_path);
      auto [q, u] = parse_range(mix);
      if (q < 0 || u < 0) throw UsageError("mix parts must be nonnegative");
      wl.queries = static_cast<std::size_t>(q);
      wl.updates = static_cast<std::size_t>(u);
      wl.from_label = from_label;
      Workload w = generate_workload(g, wl);
      with_output(out_path, [&](std::ostream& o) { write_workload(o, w); });
      return 0;
    }
    if (*bench_cmd) {
      bench.graph = parse_graph_kind(kind);
      bench.sizes = parse_sizes(sizes);
      bench.eps = Rational::parse(epsilon);
      bench.oracles.clear();
      std::stringstream ss(oracles);
      std::string item;
      while (std::getline(ss, item, ',')) bench.oracles.push_back(parse_oracle_kind(item));
      auto rows = bench_scaling(bench);
      with_output(out_path, [&](std::ostream& o) { write_bench_csv(o, rows); });
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
