#include "vlo/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <tuple>

#include "vlo/sssp.hpp"

namespace vlo {

Vertex DecompositionNode::local(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return kNoVertex;
  return static_cast<Vertex>(it - vertices.begin());
}

std::vector<int> DecompositionTree::ancestors(int id) const {
  std::vector<int> out;
  for (int r = id; r >= 0; r = nodes_[static_cast<std::size_t>(r)].parent) out.push_back(r);
  std::reverse(out.begin(), out.end());
  return out;
}

bool DecompositionTree::is_ancestor(int a, int b) const {
  return enter_[static_cast<std::size_t>(a)] <= enter_[static_cast<std::size_t>(b)] &&
         exit_[static_cast<std::size_t>(b)] <= exit_[static_cast<std::size_t>(a)];
}

int DecompositionTree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.level);
  return d;
}

void DecompositionTree::release_graphs() {
  for (auto& n : nodes_) {
    n.graph = LabeledGraph(n.graph.directed());
    n.embedding = Embedding();
  }
}

void DecompositionTree::dump(std::ostream& out) const {
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, indent] = stack.back();
    stack.pop_back();
    const DecompositionNode& n = node(id);
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out << pad << "node " << id << " level " << n.level << " |V|=" << n.vertices.size() << " own=" << n.own_weight;
    if (n.leaf()) out << " leaf owned=" << n.owned.size();
    out << '\n';
    for (int p : n.paths) {
      const SeparatorPath& sp = path(p);
      out << pad << "  path " << p << ": " << sp.vertices.front() << " -> " << sp.vertices.back() << " length "
          << sp.length() << " vertices " << sp.vertices.size() << '\n';
    }
    if (!n.leaf()) {
      stack.emplace_back(n.children[1], indent + 1);
      stack.emplace_back(n.children[0], indent + 1);
    }
  }
}

// ---------------------------------------------------------------------------
// Side classification

namespace {

Dart dart_from(const LabeledGraph& g, EdgeId e, Vertex tail) {
  return make_dart(e, g.edge(e).u != tail);
}

// Marks one side of the cycle into `mark` (value `stamp`), flooding through
// vertices whose cycle mark differs from `cycle_stamp`.
void flood_left(const Embedding& emb, std::span<const Dart> cycle, const std::vector<int>& on_cycle, int cycle_stamp,
                std::vector<int>& mark, int stamp, std::vector<Vertex>& stack, std::vector<Vertex>* out) {
  std::size_t k = cycle.size();
  stack.clear();
  for (std::size_t i = 0; i < k; ++i) {
    Dart out_dart = cycle[i];
    Dart in_twin = twin(cycle[(i + k - 1) % k]);
    for (Dart d = emb.rot_next(out_dart); d != in_twin; d = emb.rot_next(d)) {
      Vertex y = emb.head(d);
      if (on_cycle[static_cast<std::size_t>(y)] == cycle_stamp || mark[static_cast<std::size_t>(y)] == stamp) continue;
      mark[static_cast<std::size_t>(y)] = stamp;
      stack.push_back(y);
    }
  }
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    if (out) out->push_back(x);
    for (Dart d : emb.rotation(x)) {
      Vertex y = emb.head(d);
      if (on_cycle[static_cast<std::size_t>(y)] == cycle_stamp || mark[static_cast<std::size_t>(y)] == stamp) continue;
      mark[static_cast<std::size_t>(y)] = stamp;
      stack.push_back(y);
    }
  }
}

}  // namespace

SideSplit classify_sides(const LabeledGraph& g, const Embedding& emb, std::span<const Dart> cycle) {
  std::size_t n = g.vertex_count();
  std::vector<int> on_cycle(n, 0);
  for (Dart d : cycle) on_cycle[static_cast<std::size_t>(emb.tail(d))] = 1;
  std::vector<int> mark(n, 0);
  std::vector<Vertex> stack;
  SideSplit s;
  flood_left(emb, cycle, on_cycle, 1, mark, 1, stack, &s.left);
  for (std::size_t v = 0; v < n; ++v)
    if (!on_cycle[v] && !mark[v]) s.right.push_back(static_cast<Vertex>(v));
  std::sort(s.left.begin(), s.left.end());
  return s;
}

FundamentalCycle fundamental_cycle(const LabeledGraph& g, const Embedding& emb, std::span<const EdgeId> parent_edge,
                                   EdgeId edge) {
  std::size_t n = g.vertex_count();
  auto parent = [&](Vertex v) {
    EdgeId pe = parent_edge[static_cast<std::size_t>(v)];
    return pe == kNoEdge ? kNoVertex : g.other(pe, v);
  };
  const Edge& e = g.edge(edge);
  Vertex a = e.u;
  Vertex b = e.v;
  std::vector<char> above_a(n, 0);
  for (Vertex x = a; x != kNoVertex; x = parent(x)) above_a[static_cast<std::size_t>(x)] = 1;
  Vertex lca = b;
  while (!above_a[static_cast<std::size_t>(lca)]) lca = parent(lca);

  FundamentalCycle fc;
  fc.edge = edge;
  fc.lca = lca;
  fc.darts.push_back(make_dart(edge, false));
  for (Vertex x = b; x != lca; x = parent(x)) fc.darts.push_back(dart_from(g, parent_edge[static_cast<std::size_t>(x)], x));
  std::vector<Dart> up;
  for (Vertex x = a; x != lca; x = parent(x)) up.push_back(dart_from(g, parent_edge[static_cast<std::size_t>(x)], x));
  for (auto it = up.rbegin(); it != up.rend(); ++it) fc.darts.push_back(twin(*it));
  for (Dart d : fc.darts) fc.vertices.push_back(emb.tail(d));
  fc.sides = classify_sides(g, emb, fc.darts);
  return fc;
}

std::optional<FundamentalCycle> balanced_fundamental_cycle(const LabeledGraph& g, const Embedding& emb,
                                                           std::span<const EdgeId> parent_edge) {
  std::optional<FundamentalCycle> best;
  std::size_t best_side = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(static_cast<EdgeId>(e));
    if (parent_edge[static_cast<std::size_t>(ed.u)] == static_cast<EdgeId>(e) ||
        parent_edge[static_cast<std::size_t>(ed.v)] == static_cast<EdgeId>(e) || ed.u == ed.v)
      continue;
    FundamentalCycle fc = fundamental_cycle(g, emb, parent_edge, static_cast<EdgeId>(e));
    std::size_t side = std::max(fc.sides.left.size(), fc.sides.right.size());
    if (!best || side < best_side || (side == best_side && fc.vertices.size() < best->vertices.size())) {
      best_side = side;
      best = std::move(fc);
    }
  }
  return best;
}

}  // namespace vlo
