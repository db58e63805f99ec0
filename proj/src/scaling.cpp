#include "vlo/scaling.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "vlo/directed_oracle.hpp"
#include "vlo/fast_query_oracle.hpp"
#include "vlo/sssp.hpp"

namespace vlo {

std::size_t AlphaFamily::total_vertices() const {
  std::size_t s = 0;
  for (const auto& m : members) s += m.graph.vertex_count();
  return s;
}

std::size_t AlphaFamily::total_edges() const {
  std::size_t s = 0;
  for (const auto& m : members) s += m.graph.edge_count();
  return s;
}

std::vector<int> AlphaFamily::designated(Vertex v) const {
  int j = band[static_cast<std::size_t>(v)] + 2;
  std::vector<int> out;
  for (int i = j - 2; i <= j; ++i) {
    int m = member_of_index[static_cast<std::size_t>(i)];
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

DecompositionOptions AlphaFamily::options(int member, const DecompositionOptions& base) const {
  const FamilyMember& m = members[static_cast<std::size_t>(member)];
  DecompositionOptions o = base;
  o.root = m.tree_root;
  o.infinite_length = big;
  o.max_piece = std::min(base.max_piece, alpha);
  o.virtual_vertices.clear();
  if (m.virtual_root != kNoVertex) {
    o.virtual_vertices.assign(m.graph.vertex_count(), 0);
    o.virtual_vertices[static_cast<std::size_t>(m.virtual_root)] = 1;
  }
  return o;
}

namespace {

// Darts leaving the blob of vertices below band `lo`, in rotation order
// around the blob's tree.
std::vector<Dart> blob_boundary(const LabeledGraph& g, const Embedding& emb, const AlphaFamily& f,
                                const std::vector<EdgeId>& parent_edge, int lo) {
  std::vector<Dart> out;
  auto in_blob = [&](Vertex x) { return f.band[static_cast<std::size_t>(x)] < lo; };
  if (emb.rotation(f.root).empty()) return out;
  struct Frame {
    Vertex x;
    Dart cur;
    Dart stop;
    bool fresh;
  };
  Dart start = emb.rotation(f.root)[0];
  std::vector<Frame> stack{{f.root, start, start, true}};
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (!fr.fresh && fr.cur == fr.stop) {
      stack.pop_back();
      continue;
    }
    fr.fresh = false;
    Dart d = fr.cur;
    fr.cur = emb.rot_next(d);
    Vertex y = emb.head(d);
    EdgeId e = dart_edge(d);
    if (in_blob(y)) {
      if (parent_edge[static_cast<std::size_t>(y)] == e && y != f.root && g.other(e, y) == fr.x) {
        Dart back = twin(d);
        stack.push_back({y, emb.rot_next(back), back, false});
        // A leaf of the tree has only the dart back to its parent.
        if (stack.back().cur == back) stack.pop_back();
      }
      continue;
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

AlphaFamily build_alpha_family(const LabeledGraph& g, Length alpha, Vertex root) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  std::size_t n = g.vertex_count();
  AlphaFamily f;
  f.alpha = alpha;
  f.root = root;
  f.big = g.infinite_length();
  std::vector<EdgeId> parent_edge;
  sssp_undirected(g, root, f.root_distance, nullptr, &parent_edge);
  int top = 0;
  f.band.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!finite(f.root_distance[v])) throw std::invalid_argument("graph is not connected");
    f.band[v] = static_cast<int>(f.root_distance[v] / alpha);
    top = std::max(top, f.band[v]);
  }
  Embedding emb = Embedding::from_coordinates(g);

  std::map<std::pair<int, int>, int> by_range;
  for (int i = 0; i <= top + 2; ++i) {
    std::pair<int, int> range{std::max(0, i - 2), std::min(i, top)};
    auto [it, fresh] = by_range.try_emplace(range, static_cast<int>(by_range.size()));
    f.member_of_index.push_back(it->second);
  }
  f.members.resize(by_range.size());
  f.placements.assign(n, {});

  for (const auto& [range, id] : by_range) {
    FamilyMember& m = f.members[static_cast<std::size_t>(id)];
    m.lo = range.first;
    m.hi = range.second;
    m.graph = LabeledGraph(g.directed());
    std::vector<Vertex> loc(n, kNoVertex);
    if (m.lo > 0) {
      m.virtual_root = m.graph.add_vertex(g.position(root));
      m.global.push_back(kNoVertex);
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (f.band[v] < m.lo || f.band[v] > m.hi) continue;
      loc[v] = m.graph.add_vertex(g.position(static_cast<Vertex>(v)), g.label(static_cast<Vertex>(v)));
      m.global.push_back(static_cast<Vertex>(v));
      f.placements[v].emplace_back(id, loc[v]);
    }
    m.tree_root = m.virtual_root != kNoVertex ? m.virtual_root : loc[static_cast<std::size_t>(root)];

    std::vector<EdgeId> emap(g.edge_count(), kNoEdge);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(static_cast<EdgeId>(e));
      Vertex a = loc[static_cast<std::size_t>(ed.u)];
      Vertex b = loc[static_cast<std::size_t>(ed.v)];
      if (a != kNoVertex && b != kNoVertex)
        emap[e] = m.graph.add_edge_pair(a, b, ed.forward, ed.backward, ed.role, static_cast<EdgeId>(e));
    }
    // Contracted blob: one edge to each member vertex next to it, in the
    // order the blob's boundary meets them. Kept darts point into the member.
    std::vector<Dart> kept(n, kNoDart);
    std::vector<Dart> root_rotation;
    if (m.virtual_root != kNoVertex) {
      for (Dart d : blob_boundary(g, emb, f, parent_edge, m.lo)) {
        Vertex x = emb.head(d);
        std::size_t xi = static_cast<std::size_t>(x);
        if (loc[xi] == kNoVertex || kept[xi] != kNoDart) continue;
        kept[xi] = d;
        Length len = f.big + f.root_distance[xi] - static_cast<Length>(m.lo) * alpha;
        EdgeId re = m.graph.add_edge_pair(m.virtual_root, loc[xi], len, g.directed() ? kInfinity : len,
                                          EdgeRole::kVirtual);
        emap[static_cast<std::size_t>(dart_edge(d))] = re;
        root_rotation.push_back(make_dart(re, false));
      }
    }
    std::vector<std::vector<Dart>> rot(m.graph.vertex_count());
    if (m.virtual_root != kNoVertex) rot[static_cast<std::size_t>(m.virtual_root)] = root_rotation;
    for (std::size_t v = 0; v < n; ++v) {
      if (loc[v] == kNoVertex) continue;
      auto& r = rot[static_cast<std::size_t>(loc[v])];
      for (Dart d : emb.rotation(static_cast<Vertex>(v))) {
        Vertex y = emb.head(d);
        std::size_t yi = static_cast<std::size_t>(y);
        if (loc[yi] != kNoVertex) {
          r.push_back(make_dart(emap[static_cast<std::size_t>(dart_edge(d))], d & 1));
        } else if (f.band[yi] < m.lo && kept[v] == twin(d)) {
          r.push_back(make_dart(emap[static_cast<std::size_t>(dart_edge(d))], true));
        }
      }
    }
    m.embedding = Embedding::from_rotation(std::move(rot), m.graph.edge_count());
  }
  return f;
}

FamilyOracle::FamilyOracle(std::shared_ptr<const AlphaFamily> family, std::vector<std::unique_ptr<LabelOracle>> members,
                           std::string name)
    : family_(std::move(family)), members_(std::move(members)), name_(std::move(name)) {
  labels_.assign(family_->placements.size(), kNoLabel);
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    auto [m, local] = family_->placements[v].front();
    labels_[v] = members_[static_cast<std::size_t>(m)]->label(local);
  }
}

Length FamilyOracle::query(Vertex u, Label label) const {
  ++counters_.queries;
  Length best = kInfinity;
  for (auto [m, local] : family_->placements[static_cast<std::size_t>(u)]) {
    const LabelOracle& o = *members_[static_cast<std::size_t>(m)];
    best = std::min(best, o.query(local, label));
    counters_.query_probes += o.take_counters().query_probes;
  }
  return best >= family_->big ? kInfinity : best;
}

Length FamilyOracle::query_from_label(Label label, Vertex u) const {
  ++counters_.queries;
  Length best = kInfinity;
  for (auto [m, local] : family_->placements[static_cast<std::size_t>(u)]) {
    const LabelOracle& o = *members_[static_cast<std::size_t>(m)];
    best = std::min(best, o.query_from_label(label, local));
    counters_.query_probes += o.take_counters().query_probes;
  }
  return best >= family_->big ? kInfinity : best;
}

void FamilyOracle::update(Vertex v, Label label) {
  ++counters_.updates;
  labels_[static_cast<std::size_t>(v)] = label;
  for (auto [m, local] : family_->placements[static_cast<std::size_t>(v)]) {
    LabelOracle& o = *members_[static_cast<std::size_t>(m)];
    o.update(local, label);
    counters_.update_touches += o.take_counters().update_touches;
  }
}

std::vector<std::unique_ptr<FamilyOracle>> build_family_oracles(const LabeledGraph& g, Length alpha,
                                                                std::span<const Rational> accuracies, ScaleKind kind,
                                                                const DecompositionOptions& base) {
  auto family = std::make_shared<AlphaFamily>(build_alpha_family(g, alpha, base.root));
  std::vector<std::vector<std::unique_ptr<LabelOracle>>> per(accuracies.size());
  for (std::size_t i = 0; i < family->members.size(); ++i) {
    const FamilyMember& m = family->members[i];
    auto tree = std::make_shared<DecompositionTree>(
        decompose(m.graph, m.embedding, family->options(static_cast<int>(i), base)));
    for (std::size_t a = 0; a < accuracies.size(); ++a) {
      if (kind == ScaleKind::kFastQuery)
        per[a].push_back(std::make_unique<FastQueryScaleOracle>(m.graph, tree, alpha, accuracies[a]));
      else
        per[a].push_back(std::make_unique<DirectedScaleOracle>(m.graph, tree, alpha, accuracies[a]));
    }
    tree->release_graphs();
  }
  std::vector<std::unique_ptr<FamilyOracle>> out;
  for (auto& members : per)
    out.push_back(std::make_unique<FamilyOracle>(family, std::move(members),
                                                 kind == ScaleKind::kFastQuery ? "fast-query-family" : "directed-family"));
  return out;
}

Length distance_upper_bound(const LabeledGraph& g) {
  std::vector<Length> out, in;
  sssp_distances(g, 0, Direction::kForward, out);
  sssp_distances(g, 0, Direction::kReverse, in);
  Length a = *std::max_element(out.begin(), out.end());
  Length b = *std::max_element(in.begin(), in.end());
  if (!finite(a) || !finite(b)) return std::max<Length>(g.total_original_length(), 1);
  return std::max<Length>(a + b, 1);
}

StretchOracle::StretchOracle(const LabeledGraph& g, Rational eps, ScaleKind kind, const DecompositionOptions& base)
    : eps_(eps), coarse_accuracy_(1, 2), fine_accuracy_(eps / 4), kind_(kind), labels_(g.labels()) {
  if (kind == ScaleKind::kFastQuery && g.directed()) throw std::invalid_argument("fast-query oracle is undirected");
  // Scales stop once alpha exceeds every finite distance; one more is kept
  // for the fine lookup above the located scale.
  __int128 cap = static_cast<__int128>(g.vertex_count()) * std::max<Length>(g.max_length(), 1);
  __int128 bound = std::min<__int128>(distance_upper_bound(g), cap);
  int top = 0;
  while ((static_cast<__int128>(1) << top) < bound) ++top;
  std::array<Rational, 2> acc{coarse_accuracy_, fine_accuracy_};
  for (int i = 0; i <= top + 1; ++i) {
    auto pair = build_family_oracles(g, Length(1) << i, acc, kind, base);
    coarse_.push_back(std::move(pair[0]));
    fine_.push_back(std::move(pair[1]));
  }
}

void StretchOracle::absorb(const LabelOracle& o) const {
  OracleCounters c = o.take_counters();
  counters_.query_probes += c.query_probes;
  counters_.update_touches += c.update_touches;
}

Length StretchOracle::answer(Vertex u, Label label, bool from_label) const {
  if (labels_[static_cast<std::size_t>(u)] == label) return 0;
  auto ask = [&](const FamilyOracle& o) {
    Length d = from_label ? o.query_from_label(label, u) : o.query(u, label);
    absorb(o);
    return d;
  };
  // Coarse answers at scale i count as found when within 3/2 of 2^i.
  auto found = [&](int i) {
    Length d = ask(*coarse_[static_cast<std::size_t>(i)]);
    return finite(d) && 2 * d <= 3 * (Length(1) << i);
  };
  if (!found(top())) return kInfinity;
  int lo = 0;
  int hi = top();
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (found(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  Length a = ask(*fine_[static_cast<std::size_t>(lo)]);
  Length b = ask(*fine_[static_cast<std::size_t>(lo + 1)]);
  return std::min(a, b);
}

Length StretchOracle::query(Vertex u, Label label) const {
  ++counters_.queries;
  return answer(u, label, false);
}

Length StretchOracle::query_from_label(Label label, Vertex u) const {
  ++counters_.queries;
  return answer(u, label, true);
}

void StretchOracle::update(Vertex v, Label label) {
  ++counters_.updates;
  labels_[static_cast<std::size_t>(v)] = label;
  for (auto* side : {&coarse_, &fine_})
    for (auto& o : *side) {
      o->update(v, label);
      absorb(*o);
    }
}

}  // namespace vlo
