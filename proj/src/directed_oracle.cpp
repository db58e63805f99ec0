#include "vlo/directed_oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "vlo/sssp.hpp"

namespace vlo {

AccuracySchedule::AccuracySchedule(Rational e, int d)
    : eps(e), depth(std::max(d, 1)), vertex(e / (8 * std::max(d, 1))), query(e / 2) {}

Rational AccuracySchedule::level(int i) const {
  if (i < 1 || i > depth) throw std::out_of_range("level outside the schedule");
  return Rational(eps.num * (depth - i + 1), eps.den * 4 * depth);
}

namespace {

std::shared_ptr<const DecompositionTree> capped_tree(const LabeledGraph& h, Length alpha, DecompositionOptions opts) {
  opts.max_piece = std::min(opts.max_piece, alpha);
  return std::make_shared<DecompositionTree>(decompose(h, Embedding::from_coordinates(h), opts));
}

}  // namespace

DirectedScaleOracle::DirectedScaleOracle(const LabeledGraph& h, Length alpha, Rational eps, DecompositionOptions opts,
                                         bool both_directions)
    : DirectedScaleOracle(h, capped_tree(h, alpha, opts), alpha, eps) {
  if (both_directions) reverse_ = std::make_unique<DirectedScaleOracle>(h.reversed(), alpha, eps, opts, false);
}

DirectedScaleOracle::DirectedScaleOracle(const LabeledGraph& h, std::shared_ptr<const DecompositionTree> tree,
                                         Length alpha, Rational eps)
    : tree_(std::move(tree)), alpha_(alpha), schedule_(eps, tree_->depth()) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  build(h);
}

void DirectedScaleOracle::build_vertex_sets(const LabeledGraph& h) {
  const DecompositionTree& t = *tree_;
  std::size_t n = h.vertex_count();
  from_.assign(n, {});
  into_.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) {
    int leaf = t.leaf_of(static_cast<Vertex>(v));
    if (leaf < 0) continue;
    from_[v].resize(slots_[static_cast<std::size_t>(leaf)].size());
    into_[v].resize(slots_[static_cast<std::size_t>(leaf)].size());
  }
  Length reach = t.infinite_length() - 1;
  std::vector<std::vector<Length>> fwd, rev;
  std::vector<Length> column;
  for (std::size_t id = 0; id < t.size(); ++id) {
    const DecompositionNode& nd = t.node(static_cast<int>(id));
    if (nd.leaf()) continue;
    if (nd.graph.vertex_count() != nd.vertices.size()) throw std::logic_error("decomposition graphs were released");
    std::size_t base = slots_[id].size() - nd.paths.size();
    for (std::size_t k = 0; k < nd.paths.size(); ++k) {
      const SeparatorPath& sp = t.path(nd.paths[k]);
      std::size_t len = sp.vertices.size();
      fwd.resize(len);
      rev.resize(len);
      for (std::size_t j = 0; j < len; ++j) {
        sssp_distances(nd.graph, nd.local(sp.vertices[j]), Direction::kForward, fwd[j], reach);
        sssp_distances(nd.graph, nd.local(sp.vertices[j]), Direction::kReverse, rev[j], reach);
      }
      for (std::size_t x = 0; x < nd.vertices.size(); ++x) {
        Vertex v = nd.vertices[x];
        int leaf = t.leaf_of(v);
        if (leaf < 0 || !t.is_ancestor(static_cast<int>(id), leaf)) continue;
        column.resize(len);
        for (std::size_t j = 0; j < len; ++j) column[j] = rev[j][x];
        from_[static_cast<std::size_t>(v)][base + k] =
            select_connections_additive(column, sp.h, alpha_, schedule_.vertex, CoverMode::kFromSource);
        for (std::size_t j = 0; j < len; ++j) column[j] = fwd[j][x];
        into_[static_cast<std::size_t>(v)][base + k] =
            select_connections_additive(column, sp.h, alpha_, schedule_.vertex, CoverMode::kIntoSource);
      }
    }
  }
}

void DirectedScaleOracle::build(const LabeledGraph& h) {
  const DecompositionTree& t = *tree_;
  labels_ = h.labels();
  slots_.assign(t.size(), {});
  for (std::size_t id = 0; id < t.size(); ++id) {
    const DecompositionNode& nd = t.node(static_cast<int>(id));
    if (nd.parent >= 0) slots_[id] = slots_[static_cast<std::size_t>(nd.parent)];
    slots_[id].insert(slots_[id].end(), nd.paths.begin(), nd.paths.end());
  }
  build_vertex_sets(h);

  leaf_dist_.assign(h.vertex_count(), {});
  std::vector<Length> dist;
  for (std::size_t id = 0; id < t.size(); ++id) {
    const DecompositionNode& nd = t.node(static_cast<int>(id));
    if (!nd.leaf()) continue;
    for (Vertex u : nd.owned) {
      sssp_distances(nd.graph, nd.local(u), Direction::kReverse, dist, t.infinite_length() - 1);
      auto& row = leaf_dist_[static_cast<std::size_t>(u)];
      for (std::size_t x = 0; x < nd.vertices.size(); ++x)
        if (finite(dist[x]) && !t.is_virtual(nd.vertices[x])) row.emplace_back(nd.vertices[x], dist[x]);
    }
  }

  // Bottom-up: node ids are assigned parents first.
  sets_.assign(t.size(), {});
  for (std::size_t id = t.size(); id-- > 0;) {
    const DecompositionNode& nd = t.node(static_cast<int>(id));
    std::set<Label> present;
    if (nd.leaf()) {
      for (Vertex w : nd.owned)
        if (labels_[static_cast<std::size_t>(w)] != kNoLabel) present.insert(labels_[static_cast<std::size_t>(w)]);
    } else {
      for (int c : nd.children)
        for (const auto& [l, s] : sets_[static_cast<std::size_t>(c)]) present.insert(l);
    }
    for (Label l : present) refresh(static_cast<int>(id), l);
  }
  counters_ = {};
}

void DirectedScaleOracle::refresh(int node, Label label) {
  const DecompositionTree& t = *tree_;
  const DecompositionNode& nd = t.node(node);
  auto& table = sets_[static_cast<std::size_t>(node)];
  const std::vector<int>& sl = slots_[static_cast<std::size_t>(node)];
  std::vector<const ConnectionSet*> inputs;
  LabelSets out;
  out.slot.resize(sl.size());

  if (nd.leaf()) {
    std::vector<Vertex> members;
    for (Vertex w : nd.owned)
      if (labels_[static_cast<std::size_t>(w)] == label) members.push_back(w);
    if (members.empty()) {
      table.erase(label);
      return;
    }
    for (std::size_t s = 0; s < sl.size(); ++s) {
      inputs.clear();
      for (Vertex w : members) {
        inputs.push_back(&from_[static_cast<std::size_t>(w)][s]);
        counters_.update_touches += inputs.back()->size();
      }
      out.slot[s] = thin(inputs, piece_h(sl[s]), alpha_, schedule_.vertex, CoverMode::kFromSource);
    }
  } else {
    std::vector<const LabelSets*> kids;
    for (int c : nd.children) {
      const auto& ct = sets_[static_cast<std::size_t>(c)];
      auto it = ct.find(label);
      if (it != ct.end()) kids.push_back(&it->second);
    }
    if (kids.empty()) {
      table.erase(label);
      return;
    }
    Rational slack = schedule_.vertex + schedule_.vertex;
    for (std::size_t s = 0; s < sl.size(); ++s) {
      inputs.clear();
      for (const LabelSets* k : kids) {
        inputs.push_back(&k->slot[s]);
        counters_.update_touches += inputs.back()->size();
      }
      out.slot[s] = thin(inputs, piece_h(sl[s]), alpha_, slack, CoverMode::kFromSource);
    }
  }

  std::size_t base = sl.size() - nd.paths.size();
  Rational slack = schedule_.eps / 4;
  for (std::size_t k = 0; k < nd.paths.size(); ++k) {
    const ConnectionSet* one = &out.slot[base + k];
    counters_.update_touches += one->size();
    out.query.push_back(thin(std::span<const ConnectionSet* const>(&one, 1), piece_h(nd.paths[k]), alpha_, slack,
                             CoverMode::kFromSource));
  }
  table[label] = std::move(out);
}

void DirectedScaleOracle::check_vertex(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= labels_.size() || tree_->is_virtual(v))
    throw std::out_of_range("vertex not served by this oracle");
}

Length DirectedScaleOracle::query_from_label(Label label, Vertex u) const {
  check_vertex(u);
  ++counters_.queries;
  if (labels_[static_cast<std::size_t>(u)] == label) return 0;
  const DecompositionTree& t = *tree_;
  Length best = kInfinity;
  for (const auto& [w, d] : leaf_dist_[static_cast<std::size_t>(u)]) {
    ++counters_.query_probes;
    if (labels_[static_cast<std::size_t>(w)] == label) best = std::min(best, d);
  }
  const auto& into = into_[static_cast<std::size_t>(u)];
  for (int r = t.node(t.leaf_of(u)).parent; r >= 0; r = t.node(r).parent) {
    const auto& table = sets_[static_cast<std::size_t>(r)];
    auto it = table.find(label);
    if (it == table.end()) continue;
    const DecompositionNode& nd = t.node(r);
    std::size_t base = slots_[static_cast<std::size_t>(r)].size() - nd.paths.size();
    for (std::size_t k = 0; k < nd.paths.size(); ++k) {
      const ConnectionSet& star = it->second.query[k];
      const ConnectionSet& to_u = into[base + k];
      auto h = piece_h(nd.paths[k]);
      counters_.query_probes += star.size() + to_u.size();
      // Sweep t along the piece keeping the best source entry at or before it.
      Length lead = kInfinity;
      std::size_t i = 0;
      for (const Connection& c : to_u) {
        for (; i < star.size() && star[i].pos <= c.pos; ++i) lead = std::min(lead, star[i].length - h[star[i].pos]);
        if (lead < kInfinity) best = std::min(best, lead + h[c.pos] + c.length);
      }
    }
  }
  return best >= t.infinite_length() ? kInfinity : best;
}

Length DirectedScaleOracle::query(Vertex u, Label label) const {
  if (!reverse_) throw std::logic_error("vertex to label queries need the reversed companion");
  ++counters_.queries;
  Length d = reverse_->query_from_label(label, u);
  counters_.query_probes += reverse_->counters().query_probes;
  reverse_->reset_counters();
  return d;
}

void DirectedScaleOracle::update(Vertex v, Label label) {
  check_vertex(v);
  ++counters_.updates;
  Label old = labels_[static_cast<std::size_t>(v)];
  if (reverse_) {
    reverse_->update(v, label);
    counters_.update_touches += reverse_->counters().update_touches;
    reverse_->reset_counters();
  }
  if (old == label) return;
  labels_[static_cast<std::size_t>(v)] = label;
  const DecompositionTree& t = *tree_;
  for (Label l : {old, label}) {
    if (l == kNoLabel) continue;
    for (int r = t.leaf_of(v); r >= 0; r = t.node(r).parent) refresh(r, l);
  }
}

const ConnectionSet* DirectedScaleOracle::label_set(int node, Label label, std::size_t slot) const {
  const auto& table = sets_[static_cast<std::size_t>(node)];
  auto it = table.find(label);
  return it == table.end() ? nullptr : &it->second.slot[slot];
}

const ConnectionSet* DirectedScaleOracle::query_set(int node, Label label, std::size_t k) const {
  const auto& table = sets_[static_cast<std::size_t>(node)];
  auto it = table.find(label);
  return it == table.end() ? nullptr : &it->second.query[k];
}

const ConnectionSet& DirectedScaleOracle::from_vertex(Vertex v, std::size_t slot) const {
  return from_[static_cast<std::size_t>(v)][slot];
}

const ConnectionSet& DirectedScaleOracle::into_vertex(Vertex v, std::size_t slot) const {
  return into_[static_cast<std::size_t>(v)][slot];
}

}  // namespace vlo
