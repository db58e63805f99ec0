#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vlo/generators.hpp"
#include "vlo/oracle.hpp"

namespace vlo {

enum class OpKind : std::uint8_t { kRelabel, kQuery, kQueryFromLabel };

struct Op {
  OpKind kind;
  Vertex vertex;
  Label label;

  friend bool operator==(const Op&, const Op&) = default;
};

struct Workload {
  std::uint64_t seed = 0;
  Label labels = 1;
  std::vector<Op> ops;
};

struct WorkloadOptions {
  std::size_t ops = 1000;
  // Queries and relabels are drawn in ratio queries : updates.
  std::size_t queries = 1;
  std::size_t updates = 1;
  // Label universe; queries may also ask for one label nobody carries yet.
  Label labels = 4;
  // Queries ask for label to vertex distances instead.
  bool from_label = false;
  std::uint64_t seed = 1;
};

Workload generate_workload(const LabeledGraph& g, const WorkloadOptions& opts);
// Lines "U v label", "Q u label", "L label u"; '#' starts a comment.
Workload read_workload(std::istream& in, std::size_t vertex_count);
void write_workload(std::ostream& out, const Workload& w);

enum class OracleKind : std::uint8_t { kFastQuery, kDirected, kFastUpdate, kExact };
OracleKind parse_oracle_kind(const std::string& name);
std::string oracle_kind_name(OracleKind kind);

struct OracleSetup {
  std::unique_ptr<LabelOracle> oracle;
  // Scale of the additive guarantee; 0 for stretch guarantees.
  Length alpha = 0;
};

// fast-query: stretch oracle over fast-query scale oracles.
// directed: one directed scale oracle with alpha bounding every distance.
// fast-update: the portal oracle. exact: Dijkstra per query.
// `vertex_to_label` adds the reversed companion of the directed oracle.
OracleSetup make_oracle(OracleKind kind, const LabeledGraph& g, Rational eps, bool vertex_to_label = true);

struct OpResult {
  std::size_t index;
  Length answer;
  std::optional<Length> truth;
};

struct TrialReport {
  std::string oracle;
  Rational eps;
  Length alpha = 0;
  std::size_t vertices = 0;
  std::size_t ops = 0;
  std::size_t queries = 0;
  std::size_t updates = 0;
  std::vector<OpResult> results;  // query ops only
  double max_ratio = 1.0;         // answer / truth over finite positive truths
  double max_excess = 0.0;        // (answer - truth) / alpha, scale guarantees only
  std::optional<std::size_t> violation;
  std::string violation_detail;
  OracleCounters counters;
  double build_seconds = 0;
  double run_seconds = 0;

  bool ok() const { return !violation; }
};

// With `verify`, an exact oracle runs in lockstep and the first answer
// outside the oracle's bound stops the trial.
TrialReport run_trial(const LabeledGraph& g, const Workload& w, OracleKind kind, Rational eps, bool verify);
TrialReport run_trial(const LabeledGraph& g, const Workload& w, OracleSetup& setup, OracleKind kind, Rational eps,
                      bool verify);
nlohmann::json to_json(const TrialReport& r, bool with_timing = true);

struct BenchRow {
  std::string oracle;
  std::size_t n = 0;
  std::size_t reps = 0;
  double query_probes = 0;   // mean per query
  double update_touches = 0; // mean per update
  double build_seconds = 0;
  double query_micros = 0;
  double update_micros = 0;
};

struct BenchOptions {
  GraphKind graph = GraphKind::kGrid;
  std::vector<std::size_t> sizes{256, 1024};
  std::vector<OracleKind> oracles{OracleKind::kFastQuery, OracleKind::kDirected, OracleKind::kFastUpdate};
  Rational eps{1, 2};
  std::size_t reps = 1;
  std::size_t ops = 400;
  Length max_length = 10;
  Label labels = 4;
  std::uint64_t seed = 1;
};

std::vector<BenchRow> bench_scaling(const BenchOptions& opts);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace vlo
