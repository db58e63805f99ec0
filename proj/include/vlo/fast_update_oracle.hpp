#pragma once

#include <memory>
#include <unordered_map>

#include "vlo/decomposition.hpp"
#include "vlo/indexed_minima.hpp"
#include "vlo/oracle.hpp"

namespace vlo {

// Stretch oracle for undirected graphs: answers d with
// delta <= d <= (1 + eps) delta.
class FastUpdateOracle final : public LabelOracle {
 public:
  FastUpdateOracle(const LabeledGraph& g, Rational eps, DecompositionOptions opts = {});
  FastUpdateOracle(const LabeledGraph& g, std::shared_ptr<const DecompositionTree> tree, Rational eps);

  std::string name() const override { return "fast-update"; }
  std::size_t vertex_count() const override { return labels_.size(); }
  Length query(Vertex u, Label label) const override;
  void update(Vertex v, Label label) override;
  Label label(Vertex v) const override { return labels_[static_cast<std::size_t>(v)]; }

  Rational eps() const { return eps_; }
  const DecompositionTree& tree() const { return *tree_; }

  // One portal of a vertex on a piece of an ancestor node.
  struct Portal {
    std::uint32_t path;
    std::uint32_t pos;
    std::uint32_t slot;
    Length dist;
  };
  const std::vector<Portal>& portals(Vertex v) const { return portals_[static_cast<std::size_t>(v)]; }
  std::uint32_t slot_count(int path) const { return pieces_[static_cast<std::size_t>(path)].first_slot.back(); }
  // Slots start at 1; those of portal position `pos` are
  // first_slot(pos) + 1 .. first_slot(pos + 1).
  std::uint32_t first_slot(int path, std::uint32_t pos) const {
    return pieces_[static_cast<std::size_t>(path)].first_slot[pos];
  }
  std::optional<SlotValue> prefix_min(int path, Label label, std::uint32_t slot) const;
  std::optional<SlotValue> suffix_min(int path, Label label, std::uint32_t slot) const;
  // Entries over all labels of one piece, counting prefix and suffix once.
  std::size_t index_entries(int path) const;

 private:
  struct Indices {
    PrefixMinIndex pre;
    PrefixMinIndex suf;
  };
  struct Piece {
    std::vector<std::uint32_t> first_slot;  // size = vertices + 1
    std::unordered_map<Label, Indices> by_label;
  };

  void build(const LabeledGraph& g);
  void insert(Vertex v, Label label);
  void erase(Vertex v, Label label);
  void check_vertex(Vertex v) const;

  std::shared_ptr<const DecompositionTree> tree_;
  Rational eps_;
  std::vector<Label> labels_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<Portal>> portals_;
  std::vector<std::vector<std::pair<Vertex, Length>>> leaf_dist_;
};

}  // namespace vlo
