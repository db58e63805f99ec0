#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlo/graph.hpp"

namespace vlo {

// Work counters. Probes count inspected index entries or connection pairs,
// touches count modified index entries.
struct OracleCounters {
  std::uint64_t queries = 0;
  std::uint64_t updates = 0;
  std::uint64_t query_probes = 0;
  std::uint64_t update_touches = 0;
};

// Dynamic vertex-labeled distance oracle.
class LabelOracle {
 public:
  virtual ~LabelOracle() = default;

  virtual std::string name() const = 0;
  virtual std::size_t vertex_count() const = 0;
  // Distance from u to the nearest vertex labeled `label`; kInfinity if none.
  virtual Length query(Vertex u, Label label) const = 0;
  // Distance from the nearest `label` vertex to u. Equal to query() on
  // undirected graphs.
  virtual Length query_from_label(Label label, Vertex u) const { return query(u, label); }
  virtual void update(Vertex v, Label label) = 0;
  virtual Label label(Vertex v) const = 0;

  const OracleCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }
  // Returns the counters and zeroes them; wrappers fold inner work this way.
  OracleCounters take_counters() const {
    OracleCounters c = counters_;
    counters_ = {};
    return c;
  }

 protected:
  mutable OracleCounters counters_;
};

}  // namespace vlo
