#pragma once

#include <memory>
#include <unordered_map>

#include "vlo/decomposition.hpp"
#include "vlo/indexed_minima.hpp"
#include "vlo/oracle.hpp"

namespace vlo {

// Scale oracle for undirected graphs: answers d with delta <= d, and
// d <= delta + accuracy * alpha whenever delta <= alpha.
class FastQueryScaleOracle final : public LabelOracle {
 public:
  // Builds its own decomposition with pieces no longer than alpha.
  FastQueryScaleOracle(const LabeledGraph& h, Length alpha, Rational accuracy, DecompositionOptions opts = {});
  // Reuses a decomposition of h whose node graphs are still present.
  FastQueryScaleOracle(const LabeledGraph& h, std::shared_ptr<const DecompositionTree> tree, Length alpha,
                       Rational accuracy);

  std::string name() const override { return "fast-query-scale"; }
  std::size_t vertex_count() const override { return labels_.size(); }
  Length query(Vertex u, Label label) const override;
  void update(Vertex v, Label label) override;
  Label label(Vertex v) const override { return labels_[static_cast<std::size_t>(v)]; }

  Length alpha() const { return alpha_; }
  Rational accuracy() const { return accuracy_; }
  // Number of evenly spaced intervals per piece.
  std::int64_t intervals() const { return intervals_; }
  const DecompositionTree& tree() const { return *tree_; }

  // Connection vertices chosen on a piece, in path order.
  const std::vector<Vertex>& connections(int path) const { return connections_[static_cast<std::size_t>(path)]; }

  struct ListEntry {
    Vertex vertex;
    Length distance;
    std::int64_t quantum;  // quantized distance is quantum * alpha / intervals()
  };
  struct ListInfo {
    int node;
    int path;
    Vertex connection;
    std::vector<ListEntry> entries;  // entry i has id i + 1
  };
  std::size_t list_count() const { return lists_.size(); }
  ListInfo list_info(std::size_t list) const;
  // Smallest stored id for a label in a list, if any.
  std::optional<std::uint32_t> first_id(std::size_t list, Label label) const;
  std::size_t registrations(Vertex v) const { return regs_[static_cast<std::size_t>(v)].size(); }

 private:
  struct Registration {
    std::uint32_t list;
    std::uint32_t id;
  };
  struct List {
    int node;
    int path;
    Vertex connection;
    std::vector<Vertex> vertex_of_id;
    std::vector<Length> dist_of_id;
    std::unordered_map<Label, PredecessorSet> by_label;
  };

  void build(const LabeledGraph& h);
  void check_vertex(Vertex v) const;

  std::shared_ptr<const DecompositionTree> tree_;
  Length alpha_;
  Rational accuracy_;
  Rational eps_;
  std::int64_t intervals_;
  Length cutoff_ = 0;
  std::vector<Label> labels_;
  std::vector<std::vector<Vertex>> connections_;
  std::vector<List> lists_;
  std::vector<std::vector<Registration>> regs_;
  // Owned vertex to every vertex of its leaf, with distances inside the leaf.
  std::vector<std::vector<std::pair<Vertex, Length>>> leaf_dist_;
};

// Connection vertices on a piece: the vertex nearest to the center of each of
// `intervals` equal slices of [0, alpha], ties toward smaller h, duplicates
// removed. Returns positions along the piece.
std::vector<std::uint32_t> even_connections(std::span<const Length> h, Length alpha, std::int64_t intervals);

}  // namespace vlo
