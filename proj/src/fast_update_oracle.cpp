#include "vlo/fast_update_oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "vlo/covering.hpp"
#include "vlo/sssp.hpp"

namespace vlo {

FastUpdateOracle::FastUpdateOracle(const LabeledGraph& g, Rational eps, DecompositionOptions opts)
    : FastUpdateOracle(g, std::make_shared<DecompositionTree>(decompose(g, Embedding::from_coordinates(g), opts)), eps) {}

FastUpdateOracle::FastUpdateOracle(const LabeledGraph& g, std::shared_ptr<const DecompositionTree> tree, Rational eps)
    : tree_(std::move(tree)), eps_(eps) {
  if (g.directed()) throw std::invalid_argument("fast-update oracle needs an undirected graph");
  build(g);
}

void FastUpdateOracle::build(const LabeledGraph& g) {
  const DecompositionTree& t = *tree_;
  std::size_t n = g.vertex_count();
  labels_ = g.labels();
  portals_.assign(n, {});
  leaf_dist_.assign(n, {});
  pieces_.assign(t.path_count(), {});
  Length reach = t.infinite_length() - 1;

  std::vector<std::vector<Length>> from_q;
  std::vector<Length> column;
  struct Pending {
    std::uint32_t pos;
    Vertex owner;
    Length dist;
  };
  std::vector<Pending> pending;
  for (std::size_t p = 0; p < t.path_count(); ++p) {
    const SeparatorPath& sp = t.path(static_cast<int>(p));
    const DecompositionNode& nd = t.node(sp.node);
    if (nd.graph.vertex_count() != nd.vertices.size()) throw std::logic_error("decomposition graphs were released");
    std::size_t len = sp.vertices.size();
    from_q.resize(len);
    for (std::size_t j = 0; j < len; ++j)
      sssp_distances(nd.graph, nd.local(sp.vertices[j]), Direction::kForward, from_q[j], reach);
    pending.clear();
    for (std::size_t x = 0; x < nd.vertices.size(); ++x) {
      Vertex v = nd.vertices[x];
      int leaf = t.leaf_of(v);
      if (leaf < 0 || !t.is_ancestor(sp.node, leaf)) continue;
      column.resize(len);
      for (std::size_t j = 0; j < len; ++j) column[j] = from_q[j][x];
      for (std::uint32_t j : select_portals(column, sp.h, eps_)) pending.push_back({j, v, column[j]});
    }
    // Slots ordered by portal position, then by owner.
    std::sort(pending.begin(), pending.end(),
              [](const Pending& a, const Pending& b) { return std::tie(a.pos, a.owner) < std::tie(b.pos, b.owner); });
    Piece& piece = pieces_[p];
    piece.first_slot.assign(len + 1, 0);
    for (const Pending& e : pending) ++piece.first_slot[e.pos + 1];
    for (std::size_t j = 0; j < len; ++j) piece.first_slot[j + 1] += piece.first_slot[j];
    for (std::uint32_t s = 0; s < pending.size(); ++s) {
      const Pending& e = pending[s];
      portals_[static_cast<std::size_t>(e.owner)].push_back({static_cast<std::uint32_t>(p), e.pos, s + 1, e.dist});
    }
  }

  for (std::size_t id = 0; id < t.size(); ++id) {
    const DecompositionNode& nd = t.node(static_cast<int>(id));
    if (!nd.leaf()) continue;
    for (Vertex u : nd.owned) {
      sssp_distances(nd.graph, nd.local(u), Direction::kForward, column, reach);
      auto& row = leaf_dist_[static_cast<std::size_t>(u)];
      for (std::size_t x = 0; x < nd.vertices.size(); ++x)
        if (finite(column[x]) && !t.is_virtual(nd.vertices[x])) row.emplace_back(nd.vertices[x], column[x]);
    }
  }

  for (std::size_t v = 0; v < n; ++v)
    if (labels_[v] != kNoLabel && t.leaf_of(static_cast<Vertex>(v)) >= 0) insert(static_cast<Vertex>(v), labels_[v]);
  counters_ = {};
}

void FastUpdateOracle::insert(Vertex v, Label label) {
  for (const Portal& po : portals_[static_cast<std::size_t>(v)]) {
    ++counters_.update_touches;
    Piece& piece = pieces_[po.path];
    auto it = piece.by_label.find(label);
    if (it == piece.by_label.end()) {
      std::uint32_t slots = piece.first_slot.back();
      it = piece.by_label.emplace(label, Indices{PrefixMinIndex(slots), PrefixMinIndex(slots)}).first;
    }
    Length h = tree_->path(static_cast<int>(po.path)).h[po.pos];
    it->second.pre.insert(po.slot, po.dist - h);
    it->second.suf.insert(po.slot, po.dist + h);
  }
}

void FastUpdateOracle::erase(Vertex v, Label label) {
  for (const Portal& po : portals_[static_cast<std::size_t>(v)]) {
    ++counters_.update_touches;
    Piece& piece = pieces_[po.path];
    auto it = piece.by_label.find(label);
    it->second.pre.erase(po.slot);
    it->second.suf.erase(po.slot);
    if (it->second.pre.empty()) piece.by_label.erase(it);
  }
}

void FastUpdateOracle::check_vertex(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= labels_.size() || tree_->leaf_of(v) < 0)
    throw std::out_of_range("vertex not served by this oracle");
}

Length FastUpdateOracle::query(Vertex u, Label label) const {
  check_vertex(u);
  ++counters_.queries;
  if (labels_[static_cast<std::size_t>(u)] == label) return 0;
  Length best = kInfinity;
  for (const auto& [w, d] : leaf_dist_[static_cast<std::size_t>(u)]) {
    ++counters_.query_probes;
    if (labels_[static_cast<std::size_t>(w)] == label) best = std::min(best, d);
  }
  for (const Portal& po : portals_[static_cast<std::size_t>(u)]) {
    const Piece& piece = pieces_[po.path];
    auto it = piece.by_label.find(label);
    ++counters_.query_probes;
    if (it == piece.by_label.end()) continue;
    Length h = tree_->path(static_cast<int>(po.path)).h[po.pos];
    // Owners at or before this portal position, then at or after it.
    std::uint32_t last = piece.first_slot[po.pos + 1];
    if (last > 0) {
      ++counters_.query_probes;
      if (auto m = it->second.pre.prefix_min(last)) best = std::min(best, po.dist + h + m->value);
    }
    std::uint32_t begin = piece.first_slot[po.pos] + 1;
    if (begin <= piece.first_slot.back()) {
      ++counters_.query_probes;
      if (auto m = it->second.suf.suffix_min(begin)) best = std::min(best, po.dist - h + m->value);
    }
  }
  return best >= tree_->infinite_length() ? kInfinity : best;
}

void FastUpdateOracle::update(Vertex v, Label label) {
  check_vertex(v);
  ++counters_.updates;
  Label old = labels_[static_cast<std::size_t>(v)];
  if (old == label) return;
  if (old != kNoLabel) erase(v, old);
  labels_[static_cast<std::size_t>(v)] = label;
  if (label != kNoLabel) insert(v, label);
}

std::optional<SlotValue> FastUpdateOracle::prefix_min(int path, Label label, std::uint32_t slot) const {
  const Piece& piece = pieces_[static_cast<std::size_t>(path)];
  auto it = piece.by_label.find(label);
  if (it == piece.by_label.end()) return std::nullopt;
  return it->second.pre.prefix_min(slot);
}

std::optional<SlotValue> FastUpdateOracle::suffix_min(int path, Label label, std::uint32_t slot) const {
  const Piece& piece = pieces_[static_cast<std::size_t>(path)];
  auto it = piece.by_label.find(label);
  if (it == piece.by_label.end()) return std::nullopt;
  return it->second.suf.suffix_min(slot);
}

std::size_t FastUpdateOracle::index_entries(int path) const {
  std::size_t total = 0;
  for (const auto& [l, ix] : pieces_[static_cast<std::size_t>(path)].by_label) total += ix.pre.size();
  return total;
}

}  // namespace vlo
