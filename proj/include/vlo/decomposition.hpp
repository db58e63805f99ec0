#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "vlo/embedding.hpp"
#include "vlo/graph.hpp"

namespace vlo {

// A piece of a separator: a shortest path q_0 .. q_k of the decomposed graph,
// directed away from the tree root. h[j] is the distance from q_0 to q_j.
struct SeparatorPath {
  int node = -1;
  std::vector<Vertex> vertices;
  std::vector<Length> h;

  Length length() const { return h.empty() ? 0 : h.back(); }
};

struct DecompositionNode {
  int id = -1;
  int parent = -1;
  int level = 1;
  std::array<int, 2> children{-1, -1};
  // Sorted ids of the decomposed graph; the local id of a vertex is its index.
  std::vector<Vertex> vertices;
  // Induced subgraph on local ids plus its own triangulation edges.
  LabeledGraph graph;
  Embedding embedding;
  std::vector<int> paths;           // indices into DecompositionTree::path
  std::vector<Vertex> separator;    // all separator vertices of this node
  std::vector<Vertex> owned;        // leaves only: vertices assigned to this leaf
  std::size_t own_weight = 0;       // vertices not on any separator so far

  bool leaf() const { return children[0] < 0; }
  Vertex local(Vertex v) const;
};

struct DecompositionOptions {
  Vertex root = 0;
  // Separator branches are cut into pieces no longer than this.
  Length max_piece = kInfinity;
  std::size_t leaf_size = 4;
  // Length for triangulation edges; 0 derives 1 + total original length.
  Length infinite_length = 0;
  // Nonzero entries mark vertices that never appear on pieces and are never
  // owned by a leaf (the contracted root of a layered graph).
  std::vector<char> virtual_vertices;
  // Candidate cycles examined after the first balanced one; 0 scans all.
  std::size_t extra_candidates = 256;
  std::uint64_t seed = 1;
};

class DecompositionTree {
 public:
  std::size_t size() const { return nodes_.size(); }
  const DecompositionNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  int root() const { return 0; }
  const SeparatorPath& path(int id) const { return paths_[static_cast<std::size_t>(id)]; }
  std::size_t path_count() const { return paths_.size(); }
  std::size_t vertex_count() const { return leaf_of_.size(); }
  int leaf_of(Vertex v) const { return leaf_of_[static_cast<std::size_t>(v)]; }
  // Spanning tree used for every separator, in ids of the decomposed graph.
  Vertex tree_root() const { return tree_root_; }
  Vertex tree_parent(Vertex v) const { return tree_parent_[static_cast<std::size_t>(v)]; }
  Length tree_distance(Vertex v) const { return tree_dist_[static_cast<std::size_t>(v)]; }
  Length infinite_length() const { return infinite_length_; }
  bool is_virtual(Vertex v) const {
    return !virtual_.empty() && virtual_[static_cast<std::size_t>(v)];
  }

  // Root first, ending with `id`.
  std::vector<int> ancestors(int id) const;
  bool is_ancestor(int a, int b) const;  // a is b or above b
  int depth() const;

  // Frees the per-node graphs once oracles have been built.
  void release_graphs();
  void dump(std::ostream& out) const;

 private:
  friend class DecompositionBuilder;

  std::vector<DecompositionNode> nodes_;
  std::vector<SeparatorPath> paths_;
  std::vector<int> leaf_of_;
  std::vector<Vertex> tree_parent_;
  std::vector<Length> tree_dist_;
  std::vector<char> virtual_;
  Vertex tree_root_ = 0;
  Length infinite_length_ = 0;
  std::vector<int> enter_, exit_;
};

DecompositionTree decompose(const LabeledGraph& g, const Embedding& emb, const DecompositionOptions& opts = {});

// Vertices off a simple cycle split into the two sides of its embedding.
struct SideSplit {
  std::vector<Vertex> left;
  std::vector<Vertex> right;
};

// `cycle` is a closed dart walk; side membership comes from the rotation at
// each cycle vertex, then spreads through the rest of the graph.
SideSplit classify_sides(const LabeledGraph& g, const Embedding& emb, std::span<const Dart> cycle);

struct FundamentalCycle {
  EdgeId edge = kNoEdge;
  Vertex lca = kNoVertex;
  std::vector<Dart> darts;
  std::vector<Vertex> vertices;
  SideSplit sides;
};

// Spanning tree of g given by parent edges (kNoEdge at the root).
// Cycle closed by a non-tree edge; the two tree paths meet at their lowest
// common ancestor.
FundamentalCycle fundamental_cycle(const LabeledGraph& g, const Embedding& emb, std::span<const EdgeId> parent_edge,
                                   EdgeId edge);

// Scans every non-tree edge and returns the cycle whose larger side is
// smallest (ties to the smaller cycle). Empty when the tree has no non-tree
// edge.
std::optional<FundamentalCycle> balanced_fundamental_cycle(const LabeledGraph& g, const Embedding& emb,
                                                           std::span<const EdgeId> parent_edge);

}  // namespace vlo
