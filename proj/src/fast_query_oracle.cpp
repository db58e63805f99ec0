#include "vlo/fast_query_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "vlo/sssp.hpp"

namespace vlo {

namespace {

std::int64_t quantum_of(Length d, Length alpha, std::int64_t intervals) {
  __int128 num = static_cast<__int128>(d) * intervals;
  return static_cast<std::int64_t>((num + alpha - 1) / alpha);
}

std::shared_ptr<const DecompositionTree> capped_tree(const LabeledGraph& h, Length alpha, DecompositionOptions opts) {
  opts.max_piece = std::min(opts.max_piece, alpha);
  return std::make_shared<DecompositionTree>(decompose(h, Embedding::from_coordinates(h), opts));
}

}  // namespace

std::vector<std::uint32_t> even_connections(std::span<const Length> h, Length alpha, std::int64_t intervals) {
  std::vector<std::uint32_t> out;
  if (h.empty()) return out;
  std::size_t j = 0;
  for (std::int64_t k = 0; k < intervals; ++k) {
    // Center of slice k is (2k+1) alpha / (2 intervals); compare scaled by 2 intervals.
    __int128 center = static_cast<__int128>(2 * k + 1) * alpha;
    auto gap = [&](std::size_t i) {
      __int128 x = static_cast<__int128>(2 * intervals) * h[i] - center;
      return x < 0 ? -x : x;
    };
    while (j + 1 < h.size() && gap(j + 1) < gap(j)) ++j;
    if (out.empty() || out.back() != j) out.push_back(static_cast<std::uint32_t>(j));
  }
  return out;
}

FastQueryScaleOracle::FastQueryScaleOracle(const LabeledGraph& h, Length alpha, Rational accuracy,
                                           DecompositionOptions opts)
    : FastQueryScaleOracle(h, capped_tree(h, alpha, std::move(opts)), alpha, accuracy) {}

FastQueryScaleOracle::FastQueryScaleOracle(const LabeledGraph& h, std::shared_ptr<const DecompositionTree> tree,
                                           Length alpha, Rational accuracy)
    : tree_(std::move(tree)), alpha_(alpha), accuracy_(accuracy), eps_(accuracy / 3),
      intervals_(eps_.ceil_inverse()) {
  if (h.directed()) throw std::invalid_argument("fast-query oracle needs an undirected graph");
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  build(h);
}

void FastQueryScaleOracle::build(const LabeledGraph& h) {
  const DecompositionTree& t = *tree_;
  std::size_t n = h.vertex_count();
  labels_ = h.labels();
  regs_.assign(n, {});
  leaf_dist_.assign(n, {});
  connections_.assign(t.path_count(), {});
  Length reach = t.infinite_length() - 1;
  // Lists keep vertices within twice the scale of their connection.
  cutoff_ = std::min(reach, 2 * alpha_);

  std::vector<Length> dist;
  for (std::size_t p = 0; p < t.path_count(); ++p) {
    const SeparatorPath& sp = t.path(static_cast<int>(p));
    if (sp.length() > alpha_) throw std::invalid_argument("separator piece longer than alpha");
    const DecompositionNode& nd = t.node(sp.node);
    if (nd.graph.vertex_count() != nd.vertices.size()) throw std::logic_error("decomposition graphs were released");
    for (std::uint32_t pos : even_connections(sp.h, alpha_, intervals_)) {
      Vertex q = sp.vertices[pos];
      connections_[p].push_back(q);
      sssp_distances(nd.graph, nd.local(q), Direction::kForward, dist, cutoff_);
      // Ids are ranks starting at 1; slot 0 is unused.
      List list{sp.node, static_cast<int>(p), q, {kNoVertex}, {kInfinity}, {}};
      std::vector<std::tuple<std::int64_t, Length, Vertex>> cand;
      for (std::size_t x = 0; x < nd.vertices.size(); ++x) {
        if (!finite(dist[x])) continue;
        Vertex v = nd.vertices[x];
        int leaf = t.leaf_of(v);
        if (leaf < 0 || !t.is_ancestor(sp.node, leaf)) continue;
        cand.emplace_back(quantum_of(dist[x], alpha_, intervals_), dist[x], v);
      }
      std::sort(cand.begin(), cand.end());
      auto index = static_cast<std::uint32_t>(lists_.size());
      auto universe = static_cast<std::uint32_t>(cand.size());
      for (std::uint32_t id = 1; id <= universe; ++id) {
        auto [k, d, v] = cand[id - 1];
        list.vertex_of_id.push_back(v);
        list.dist_of_id.push_back(d);
        regs_[static_cast<std::size_t>(v)].push_back({index, id});
        Label l = labels_[static_cast<std::size_t>(v)];
        if (l == kNoLabel) continue;
        auto [it, fresh] = list.by_label.try_emplace(l, universe);
        it->second.insert(id);
      }
      lists_.push_back(std::move(list));
    }
  }

  for (std::size_t id = 0; id < t.size(); ++id) {
    const DecompositionNode& nd = t.node(static_cast<int>(id));
    if (!nd.leaf()) continue;
    for (Vertex u : nd.owned) {
      sssp_distances(nd.graph, nd.local(u), Direction::kForward, dist, reach);
      auto& row = leaf_dist_[static_cast<std::size_t>(u)];
      for (std::size_t x = 0; x < nd.vertices.size(); ++x)
        if (finite(dist[x]) && !t.is_virtual(nd.vertices[x])) row.emplace_back(nd.vertices[x], dist[x]);
    }
  }
}

void FastQueryScaleOracle::check_vertex(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= labels_.size() || tree_->is_virtual(v))
    throw std::out_of_range("vertex not served by this oracle");
}

Length FastQueryScaleOracle::query(Vertex u, Label label) const {
  check_vertex(u);
  ++counters_.queries;
  if (labels_[static_cast<std::size_t>(u)] == label) return 0;
  Length best = kInfinity;
  for (const auto& [w, d] : leaf_dist_[static_cast<std::size_t>(u)]) {
    ++counters_.query_probes;
    if (labels_[static_cast<std::size_t>(w)] == label) best = std::min(best, d);
  }
  for (const Registration& r : regs_[static_cast<std::size_t>(u)]) {
    ++counters_.query_probes;
    const List& list = lists_[r.list];
    auto it = list.by_label.find(label);
    if (it == list.by_label.end()) continue;
    std::uint32_t first = *it->second.min();
    best = std::min(best, list.dist_of_id[r.id] + list.dist_of_id[first]);
  }
  return best >= tree_->infinite_length() ? kInfinity : best;
}

void FastQueryScaleOracle::update(Vertex v, Label label) {
  check_vertex(v);
  ++counters_.updates;
  Label old = labels_[static_cast<std::size_t>(v)];
  if (old == label) return;
  labels_[static_cast<std::size_t>(v)] = label;
  for (const Registration& r : regs_[static_cast<std::size_t>(v)]) {
    ++counters_.update_touches;
    List& list = lists_[r.list];
    if (old != kNoLabel) {
      auto it = list.by_label.find(old);
      it->second.erase(r.id);
      if (it->second.empty()) list.by_label.erase(it);
    }
    if (label != kNoLabel) {
      auto [it, fresh] = list.by_label.try_emplace(label, static_cast<std::uint32_t>(list.dist_of_id.size() - 1));
      it->second.insert(r.id);
    }
  }
}

FastQueryScaleOracle::ListInfo FastQueryScaleOracle::list_info(std::size_t index) const {
  const List& list = lists_[index];
  ListInfo info{list.node, list.path, list.connection, {}};
  for (std::size_t id = 1; id < list.dist_of_id.size(); ++id)
    info.entries.push_back({list.vertex_of_id[id], list.dist_of_id[id], quantum_of(list.dist_of_id[id], alpha_, intervals_)});
  return info;
}

std::optional<std::uint32_t> FastQueryScaleOracle::first_id(std::size_t index, Label label) const {
  const List& list = lists_[index];
  auto it = list.by_label.find(label);
  if (it == list.by_label.end()) return std::nullopt;
  return it->second.min();
}

}  // namespace vlo
