#pragma once

#include <memory>
#include <unordered_map>

#include "vlo/covering.hpp"
#include "vlo/decomposition.hpp"
#include "vlo/oracle.hpp"

namespace vlo {

// Accuracy schedule over a decomposition of the given depth: per-vertex sets
// use `vertex`, label sets at level i use level(i), query sets use `query`.
struct AccuracySchedule {
  Rational eps;
  int depth = 1;
  Rational vertex;  // eps / (8 depth)
  Rational query;   // eps / 2

  AccuracySchedule() = default;
  AccuracySchedule(Rational eps, int depth);
  // eps (depth - i + 1) / (4 depth), for levels 1..depth.
  Rational level(int i) const;
};

// Scale oracle for label to vertex distances on directed graphs: answers d
// with delta(label, u) <= d, and d <= delta + eps * alpha whenever
// delta <= alpha. Vertex to label queries use a companion oracle on the
// reversed graph when `both_directions` is set.
class DirectedScaleOracle final : public LabelOracle {
 public:
  DirectedScaleOracle(const LabeledGraph& h, Length alpha, Rational eps, DecompositionOptions opts = {},
                      bool both_directions = false);
  DirectedScaleOracle(const LabeledGraph& h, std::shared_ptr<const DecompositionTree> tree, Length alpha,
                      Rational eps);

  std::string name() const override { return "directed-scale"; }
  std::size_t vertex_count() const override { return labels_.size(); }
  Length query(Vertex u, Label label) const override;
  Length query_from_label(Label label, Vertex u) const override;
  void update(Vertex v, Label label) override;
  Label label(Vertex v) const override { return labels_[static_cast<std::size_t>(v)]; }

  Length alpha() const { return alpha_; }
  const AccuracySchedule& schedule() const { return schedule_; }
  const DecompositionTree& tree() const { return *tree_; }

  // Pieces of every ancestor of a node, root first; index = slot.
  const std::vector<int>& slots(int node) const { return slots_[static_cast<std::size_t>(node)]; }
  // Covering set of the node's label class toward a slot's piece, or null.
  const ConnectionSet* label_set(int node, Label label, std::size_t slot) const;
  // Query set toward the node's own piece `k` (index into node.paths), or null.
  const ConnectionSet* query_set(int node, Label label, std::size_t k) const;
  // Per-vertex sets toward the slots of the vertex's leaf.
  const ConnectionSet& from_vertex(Vertex v, std::size_t slot) const;
  const ConnectionSet& into_vertex(Vertex v, std::size_t slot) const;

 private:
  struct LabelSets {
    std::vector<ConnectionSet> slot;   // parallel to slots(node)
    std::vector<ConnectionSet> query;  // parallel to node.paths
  };

  void build(const LabeledGraph& h);
  void build_vertex_sets(const LabeledGraph& h);
  // Recomputes the sets of `label` at one node from its members or children.
  void refresh(int node, Label label);
  void check_vertex(Vertex v) const;
  std::span<const Length> piece_h(int path) const { return tree_->path(path).h; }

  std::shared_ptr<const DecompositionTree> tree_;
  Length alpha_;
  AccuracySchedule schedule_;
  std::vector<Label> labels_;
  std::vector<std::vector<int>> slots_;
  std::vector<std::unordered_map<Label, LabelSets>> sets_;
  std::vector<std::vector<ConnectionSet>> from_, into_;
  // Owned vertex to every vertex of its leaf, with distance from there to it.
  std::vector<std::vector<std::pair<Vertex, Length>>> leaf_dist_;
  std::unique_ptr<DirectedScaleOracle> reverse_;
};

}  // namespace vlo
