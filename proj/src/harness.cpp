#include "vlo/harness.hpp"

#include <chrono>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vlo/directed_oracle.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/fast_update_oracle.hpp"
#include "vlo/scaling.hpp"

namespace vlo {

Workload generate_workload(const LabeledGraph& g, const WorkloadOptions& opts) {
  if (g.vertex_count() == 0) throw std::invalid_argument("workload needs a nonempty graph");
  if (opts.labels < 1) throw std::invalid_argument("need at least one label");
  if (opts.queries + opts.updates == 0) throw std::invalid_argument("mix must not be 0:0");
  Workload w;
  w.seed = opts.seed;
  w.labels = opts.labels;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Vertex> vertex(0, static_cast<Vertex>(g.vertex_count()) - 1);
  std::uniform_int_distribution<std::size_t> mix(0, opts.queries + opts.updates - 1);
  std::uniform_int_distribution<Label> relabel(0, opts.labels - 1);
  std::uniform_int_distribution<Label> asked(0, opts.labels);
  for (std::size_t i = 0; i < opts.ops; ++i) {
    if (mix(rng) < opts.queries) {
      Vertex u = vertex(rng);
      Label l = asked(rng);
      w.ops.push_back({opts.from_label ? OpKind::kQueryFromLabel : OpKind::kQuery, u, l});
    } else {
      Vertex v = vertex(rng);
      Label l = relabel(rng);
      w.ops.push_back({OpKind::kRelabel, v, l});
    }
  }
  return w;
}

Workload read_workload(std::istream& in, std::size_t vertex_count) {
  Workload w;
  std::string line;
  std::size_t number = 0;
  Label top = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    long long a = 0, b = 0;
    if (!(ls >> a >> b) || (tag != "U" && tag != "Q" && tag != "L"))
      throw std::invalid_argument("workload line " + std::to_string(number) + ": expected U|Q|L and two integers");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("workload line " + std::to_string(number) + ": trailing text");
    long long v = tag == "L" ? b : a;
    long long l = tag == "L" ? a : b;
    if (v < 0 || static_cast<std::size_t>(v) >= vertex_count)
      throw std::invalid_argument("workload line " + std::to_string(number) + ": vertex out of range");
    if (l < 0 || l > std::numeric_limits<Label>::max())
      throw std::invalid_argument("workload line " + std::to_string(number) + ": label out of range");
    OpKind kind = tag == "U" ? OpKind::kRelabel : tag == "Q" ? OpKind::kQuery : OpKind::kQueryFromLabel;
    w.ops.push_back({kind, static_cast<Vertex>(v), static_cast<Label>(l)});
    top = std::max(top, static_cast<Label>(l));
  }
  w.labels = top + 1;
  return w;
}

void write_workload(std::ostream& out, const Workload& w) {
  out << "# seed " << w.seed << " labels " << w.labels << '\n';
  for (const Op& op : w.ops) {
    switch (op.kind) {
      case OpKind::kRelabel: out << "U " << op.vertex << ' ' << op.label << '\n'; break;
      case OpKind::kQuery: out << "Q " << op.vertex << ' ' << op.label << '\n'; break;
      case OpKind::kQueryFromLabel: out << "L " << op.label << ' ' << op.vertex << '\n'; break;
    }
  }
}

OracleKind parse_oracle_kind(const std::string& name) {
  if (name == "fast-query") return OracleKind::kFastQuery;
  if (name == "directed") return OracleKind::kDirected;
  if (name == "fast-update") return OracleKind::kFastUpdate;
  if (name == "exact") return OracleKind::kExact;
  throw std::invalid_argument("unknown oracle: " + name);
}

std::string oracle_kind_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::kFastQuery: return "fast-query";
    case OracleKind::kDirected: return "directed";
    case OracleKind::kFastUpdate: return "fast-update";
    case OracleKind::kExact: return "exact";
  }
  return "?";
}

OracleSetup make_oracle(OracleKind kind, const LabeledGraph& g, Rational eps, bool vertex_to_label) {
  OracleSetup s;
  switch (kind) {
    case OracleKind::kFastQuery: s.oracle = std::make_unique<StretchOracle>(g, eps); break;
    case OracleKind::kDirected:
      s.alpha = distance_upper_bound(g);
      s.oracle = std::make_unique<DirectedScaleOracle>(g, s.alpha, eps, DecompositionOptions{}, vertex_to_label);
      break;
    case OracleKind::kFastUpdate: s.oracle = std::make_unique<FastUpdateOracle>(g, eps); break;
    case OracleKind::kExact: s.oracle = std::make_unique<ExactOracle>(g); break;
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Empty string when the answer is within the oracle's guarantee.
std::string check_bound(OracleKind kind, Length d, Length truth, Rational eps, Length alpha) {
  std::ostringstream why;
  if (d < truth) {
    why << "answer " << d << " below true distance " << truth;
    return why.str();
  }
  if (!finite(truth)) return "";
  bool ok = true;
  switch (kind) {
    case OracleKind::kExact: ok = d == truth; break;
    case OracleKind::kDirected: ok = truth > alpha || within_additive(d, truth, eps, alpha); break;
    default: ok = within_stretch(d, truth, eps); break;
  }
  if (!ok) why << "answer " << (finite(d) ? std::to_string(d) : "inf") << " exceeds the bound for " << truth;
  return why.str();
}

}  // namespace

TrialReport run_trial(const LabeledGraph& g, const Workload& w, OracleKind kind, Rational eps, bool verify) {
  bool vertex_to_label = false;
  for (const Op& op : w.ops) vertex_to_label = vertex_to_label || op.kind == OpKind::kQuery;
  auto start = Clock::now();
  OracleSetup setup = make_oracle(kind, g, eps, vertex_to_label);
  double build = seconds_since(start);
  TrialReport r = run_trial(g, w, setup, kind, eps, verify);
  r.build_seconds = build;
  return r;
}

TrialReport run_trial(const LabeledGraph& g, const Workload& w, OracleSetup& setup, OracleKind kind, Rational eps,
                      bool verify) {
  TrialReport r;
  r.oracle = oracle_kind_name(kind);
  r.eps = eps;
  r.alpha = setup.alpha;
  r.vertices = g.vertex_count();
  LabelOracle& o = *setup.oracle;
  std::unique_ptr<ExactOracle> exact;
  if (verify) exact = std::make_unique<ExactOracle>(g);
  o.reset_counters();
  auto start = Clock::now();
  for (std::size_t i = 0; i < w.ops.size(); ++i) {
    const Op& op = w.ops[i];
    ++r.ops;
    if (op.kind == OpKind::kRelabel) {
      ++r.updates;
      o.update(op.vertex, op.label);
      if (exact) exact->update(op.vertex, op.label);
      continue;
    }
    ++r.queries;
    bool from = op.kind == OpKind::kQueryFromLabel;
    Length d = from ? o.query_from_label(op.label, op.vertex) : o.query(op.vertex, op.label);
    OpResult res{i, d, std::nullopt};
    if (exact) {
      Length truth = from ? exact->query_from_label(op.label, op.vertex) : exact->query(op.vertex, op.label);
      res.truth = truth;
      if (finite(truth) && finite(d)) {
        if (truth > 0) r.max_ratio = std::max(r.max_ratio, static_cast<double>(d) / static_cast<double>(truth));
        if (r.alpha > 0)
          r.max_excess = std::max(r.max_excess, static_cast<double>(d - truth) / static_cast<double>(r.alpha));
      }
      std::string why = check_bound(kind, d, truth, eps, r.alpha);
      if (!why.empty()) {
        r.results.push_back(res);
        r.violation = i;
        r.violation_detail = why;
        break;
      }
    }
    r.results.push_back(res);
  }
  r.run_seconds = seconds_since(start);
  r.counters = o.counters();
  return r;
}

nlohmann::json to_json(const TrialReport& r, bool with_timing) {
  using nlohmann::json;
  auto length = [](Length x) { return finite(x) ? json(x) : json(nullptr); };
  json results = json::array();
  for (const OpResult& res : r.results)
    results.push_back({{"op", res.index},
                       {"answer", length(res.answer)},
                       {"truth", res.truth ? length(*res.truth) : json(nullptr)}});
  json j = {{"oracle", r.oracle},
            {"epsilon", r.eps.str()},
            {"alpha", r.alpha},
            {"vertices", r.vertices},
            {"ops", r.ops},
            {"queries", r.queries},
            {"updates", r.updates},
            {"max_ratio", r.max_ratio},
            {"max_additive_excess", r.max_excess},
            {"violation", r.violation ? json(*r.violation) : json(nullptr)},
            {"violation_detail", r.violation_detail},
            {"counters",
             {{"queries", r.counters.queries},
              {"updates", r.counters.updates},
              {"query_probes", r.counters.query_probes},
              {"update_touches", r.counters.update_touches}}},
            {"results", results}};
  if (with_timing) j["timing"] = {{"build_seconds", r.build_seconds}, {"run_seconds", r.run_seconds}};
  return j;
}

std::vector<BenchRow> bench_scaling(const BenchOptions& opts) {
  std::vector<BenchRow> rows;
  for (OracleKind kind : opts.oracles) {
    for (std::size_t n : opts.sizes) {
      BenchRow row;
      row.oracle = oracle_kind_name(kind);
      row.n = n;
      row.reps = opts.reps;
      for (std::size_t rep = 0; rep < opts.reps; ++rep) {
        GenOptions go;
        go.kind = opts.graph;
        go.n = n;
        go.max_length = opts.max_length;
        go.labels = opts.labels;
        go.directed = kind == OracleKind::kDirected;
        go.seed = opts.seed + rep;
        LabeledGraph g = generate_graph(go);
        WorkloadOptions wo;
        wo.ops = opts.ops;
        wo.labels = opts.labels;
        wo.from_label = kind == OracleKind::kDirected;
        wo.seed = opts.seed + rep;
        Workload w = generate_workload(g, wo);
        auto start = Clock::now();
        OracleSetup setup = make_oracle(kind, g, opts.eps, false);
        row.build_seconds += seconds_since(start);
        LabelOracle& o = *setup.oracle;
        o.reset_counters();
        double qt = 0, ut = 0;
        for (const Op& op : w.ops) {
          auto t = Clock::now();
          if (op.kind == OpKind::kRelabel) {
            o.update(op.vertex, op.label);
            ut += seconds_since(t);
          } else {
            if (op.kind == OpKind::kQuery)
              o.query(op.vertex, op.label);
            else
              o.query_from_label(op.label, op.vertex);
            qt += seconds_since(t);
          }
        }
        const OracleCounters& c = o.counters();
        double q = static_cast<double>(std::max<std::uint64_t>(c.queries, 1));
        double u = static_cast<double>(std::max<std::uint64_t>(c.updates, 1));
        row.query_probes += static_cast<double>(c.query_probes) / q;
        row.update_touches += static_cast<double>(c.update_touches) / u;
        row.query_micros += qt * 1e6 / q;
        row.update_micros += ut * 1e6 / u;
      }
      double reps = static_cast<double>(std::max<std::size_t>(opts.reps, 1));
      row.query_probes /= reps;
      row.update_touches /= reps;
      row.build_seconds /= reps;
      row.query_micros /= reps;
      row.update_micros /= reps;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "oracle,n,reps,query_probes,update_touches,build_seconds,query_micros,update_micros\n";
  for (const BenchRow& r : rows)
    out << r.oracle << ',' << r.n << ',' << r.reps << ',' << r.query_probes << ',' << r.update_touches << ','
        << r.build_seconds << ',' << r.query_micros << ',' << r.update_micros << '\n';
}

}  // namespace vlo
