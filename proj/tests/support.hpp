// Independent reference computations shared by the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "vlo/covering.hpp"
#include "vlo/graph.hpp"
#include "vlo/sssp.hpp"

namespace vlo::testing {

// Bellman-Ford over the arc list. Forward: delta(S, v). Reverse: delta(v, S).
inline std::vector<Length> bellman_ford(const LabeledGraph& g, const std::vector<Vertex>& sources,
                                        bool reverse = false, const std::vector<char>* allowed = nullptr) {
  std::size_t n = g.vertex_count();
  std::vector<Length> d(n, kInfinity);
  for (Vertex s : sources) d[static_cast<std::size_t>(s)] = 0;
  struct A {
    Vertex from, to;
    Length len;
  };
  std::vector<A> arcs;
  for (const Edge& e : g.edges()) {
    if (allowed && (!(*allowed)[static_cast<std::size_t>(e.u)] || !(*allowed)[static_cast<std::size_t>(e.v)])) continue;
    if (finite(e.forward)) arcs.push_back({e.u, e.v, e.forward});
    if (finite(e.backward)) arcs.push_back({e.v, e.u, e.backward});
  }
  if (reverse)
    for (A& a : arcs) std::swap(a.from, a.to);
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (const A& a : arcs) {
      Length du = d[static_cast<std::size_t>(a.from)];
      if (!finite(du)) continue;
      if (du + a.len < d[static_cast<std::size_t>(a.to)]) {
        d[static_cast<std::size_t>(a.to)] = du + a.len;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

// Binary-heap Dijkstra over an arc list, same contract as bellman_ford.
inline std::vector<Length> dijkstra(const LabeledGraph& g, const std::vector<Vertex>& sources, bool reverse = false) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<Vertex, Length>>> out(n);
  for (const Edge& e : g.edges()) {
    Vertex a = reverse ? e.v : e.u;
    Vertex b = reverse ? e.u : e.v;
    if (finite(e.forward)) out[static_cast<std::size_t>(a)].push_back({b, e.forward});
    if (finite(e.backward)) out[static_cast<std::size_t>(b)].push_back({a, e.backward});
  }
  std::vector<Length> d(n, kInfinity);
  using Item = std::pair<Length, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Vertex s : sources) {
    d[static_cast<std::size_t>(s)] = 0;
    heap.push({0, s});
  }
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du != d[static_cast<std::size_t>(u)]) continue;
    for (auto [v, len] : out[static_cast<std::size_t>(u)]) {
      if (du + len < d[static_cast<std::size_t>(v)]) {
        d[static_cast<std::size_t>(v)] = du + len;
        heap.push({du + len, v});
      }
    }
  }
  return d;
}

inline std::vector<std::vector<Length>> all_pairs(const LabeledGraph& g) {
  std::vector<std::vector<Length>> out;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) out.push_back(bellman_ford(g, {static_cast<Vertex>(s)}));
  return out;
}

inline bool segments_cross(Point a, Point b, Point c, Point d) {
  auto orient = [](Point p, Point q, Point r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
  double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

// Random straight-line planar graph: greedy non-crossing triangulation of
// random points, then random edge removals that keep it connected.
inline LabeledGraph random_planar(std::size_t n, std::mt19937_64& rng, Length lo, Length hi, double keep,
                                  bool directed = false, Label labels = 3) {
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_int_distribution<Length> len(lo, hi);
  std::uniform_int_distribution<Label> lab(0, labels - 1);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  std::vector<std::pair<Vertex, Vertex>> cand;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cand.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  auto dist2 = [&](std::pair<Vertex, Vertex> e) {
    Point a = pts[static_cast<std::size_t>(e.first)], b = pts[static_cast<std::size_t>(e.second)];
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
  };
  std::sort(cand.begin(), cand.end(), [&](auto a, auto b) { return dist2(a) < dist2(b); });
  std::vector<std::pair<Vertex, Vertex>> chosen;
  for (auto e : cand) {
    bool ok = true;
    for (auto f : chosen) {
      if (e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second) continue;
      if (segments_cross(pts[static_cast<std::size_t>(e.first)], pts[static_cast<std::size_t>(e.second)],
                         pts[static_cast<std::size_t>(f.first)], pts[static_cast<std::size_t>(f.second)])) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(e);
  }
  // Spanning tree first so removals never disconnect.
  std::vector<int> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
    return x;
  };
  std::shuffle(chosen.begin(), chosen.end(), rng);
  std::bernoulli_distribution keep_extra(keep);
  std::vector<std::pair<Vertex, Vertex>> kept;
  for (auto e : chosen) {
    int a = find(e.first), b = find(e.second);
    if (a != b) {
      comp[static_cast<std::size_t>(a)] = b;
      kept.push_back(e);
    } else if (keep_extra(rng)) {
      kept.push_back(e);
    }
  }
  LabeledGraph g(directed);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(pts[i], lab(rng));
  for (auto e : kept) {
    if (directed) {
      g.add_edge(e.first, e.second, len(rng));
      g.add_edge(e.second, e.first, len(rng));
    } else {
      g.add_edge(e.first, e.second, len(rng));
    }
  }
  return g;
}

// A shortest path of g: the tree path from a random root to the vertex with
// the most hops below it.
struct PathInstance {
  std::vector<Vertex> path;
  std::vector<Length> h;
};

inline PathInstance shortest_path_instance(const LabeledGraph& g, Vertex root) {
  DistanceMap d = sssp(g, root);
  std::vector<int> hops(g.vertex_count(), -1);
  std::vector<Vertex> order;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) order.push_back(static_cast<Vertex>(v));
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return d[a] < d[b]; });
  Vertex far = root;
  for (Vertex v : order) {
    if (!finite(d[v])) continue;
    Vertex p = d.parent[static_cast<std::size_t>(v)];
    hops[static_cast<std::size_t>(v)] = p == kNoVertex ? 0 : hops[static_cast<std::size_t>(p)] + 1;
    if (hops[static_cast<std::size_t>(v)] > hops[static_cast<std::size_t>(far)]) far = v;
  }
  PathInstance out;
  for (Vertex v = far; v != kNoVertex; v = d.parent[static_cast<std::size_t>(v)]) out.path.push_back(v);
  std::reverse(out.path.begin(), out.path.end());
  for (Vertex v : out.path) out.h.push_back(d[v] - d[out.path.front()]);
  return out;
}

// Brute-force additive coverage: every position t with truth[t] <= alpha is
// reached by some entry within eps * alpha, using on-path distances.
inline bool covers_additive(const ConnectionSet& set, const std::vector<Length>& truth, const std::vector<Length>& h,
                            Length alpha, Rational eps, CoverMode mode, bool undirected) {
  for (std::size_t t = 0; t < truth.size(); ++t) {
    if (!finite(truth[t]) || truth[t] > alpha) continue;
    Length best = kInfinity;
    for (const Connection& c : set) {
      Length along;
      if (undirected)
        along = h[t] > h[c.pos] ? h[t] - h[c.pos] : h[c.pos] - h[t];
      else if (mode == CoverMode::kFromSource)
        along = c.pos <= t ? h[t] - h[c.pos] : kInfinity;
      else
        along = c.pos >= t ? h[c.pos] - h[t] : kInfinity;
      best = std::min(best, sat_add(c.length, along));
    }
    if (!within_additive(best, truth[t], eps, alpha)) return false;
  }
  return true;
}

inline bool sound(const ConnectionSet& set, const std::vector<Length>& truth) {
  for (const Connection& c : set)
    if (c.length < truth[c.pos]) return false;
  return true;
}

inline Length diameter(const std::vector<std::vector<Length>>& d) {
  Length best = 0;
  for (const auto& row : d)
    for (Length x : row)
      if (finite(x)) best = std::max(best, x);
  return best;
}

// Distance from u to the nearest vertex labeled l (into_label) or from the
// nearest such vertex to u, from an all-pairs table.
inline Length label_distance(const std::vector<std::vector<Length>>& d, const std::vector<Label>& labels, Vertex u,
                             Label l, bool into_label = true) {
  Length best = kInfinity;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] != l) continue;
    best = std::min(best, into_label ? d[static_cast<std::size_t>(u)][v] : d[v][static_cast<std::size_t>(u)]);
  }
  return best;
}

}  // namespace vlo::testing
