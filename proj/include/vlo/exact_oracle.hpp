#pragma once

#include <unordered_map>
#include <unordered_set>

#include "vlo/oracle.hpp"

namespace vlo {

// Vertex to label and label to vertex sets, kept mutually inverse.
class LabelStore {
 public:
  explicit LabelStore(std::vector<Label> labels);

  Label label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<Label>& labels() const { return labels_; }
  // Vertices carrying `label`, unordered.
  std::vector<Vertex> members(Label label) const;
  std::size_t count(Label label) const;
  void relabel(Vertex v, Label label);
  // True if the two maps are inverse to each other.
  bool consistent() const;

 private:
  std::vector<Label> labels_;
  std::unordered_map<Label, std::unordered_set<Vertex>> members_;
};

// Exact answers by Dijkstra from the label class on every query.
class ExactOracle final : public LabelOracle {
 public:
  explicit ExactOracle(const LabeledGraph& g);

  std::string name() const override { return "exact"; }
  std::size_t vertex_count() const override { return graph_.vertex_count(); }
  Length query(Vertex u, Label label) const override;
  Length query_from_label(Label label, Vertex u) const override;
  void update(Vertex v, Label label) override;
  Label label(Vertex v) const override { return store_.label(v); }

  const LabelStore& store() const { return store_; }
  // delta(S_label, v) for every v, or delta(v, S_label) with kReverse.
  std::vector<Length> label_distances(Label label, bool into_label) const;

 private:
  LabeledGraph graph_;
  LabelStore store_;
};

}  // namespace vlo
