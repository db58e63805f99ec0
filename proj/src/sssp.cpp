#include "vlo/sssp.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace vlo {

namespace {

using Entry = std::pair<Length, Vertex>;
using MinHeap = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

}  // namespace

DistanceMap sssp(const LabeledGraph& g, std::span<const Vertex> sources, Direction dir,
                 const std::vector<char>* allowed) {
  if (sources.empty()) throw std::invalid_argument("sssp needs at least one source");
  std::size_t n = g.vertex_count();
  DistanceMap out;
  out.sources.assign(sources.begin(), sources.end());
  out.direction = dir;
  out.dist.assign(n, kInfinity);
  out.parent.assign(n, kNoVertex);
  out.parent_edge.assign(n, kNoEdge);
  std::vector<char> settled(n, 0);
  MinHeap heap;
  for (Vertex s : sources) {
    if (allowed && !(*allowed)[static_cast<std::size_t>(s)]) throw std::invalid_argument("source outside subgraph");
    out.dist[static_cast<std::size_t>(s)] = 0;
    heap.emplace(0, s);
  }
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(x)] || d != out.dist[static_cast<std::size_t>(x)]) continue;
    settled[static_cast<std::size_t>(x)] = 1;
    auto arcs = dir == Direction::kForward ? g.out_arcs(x) : g.in_arcs(x);
    for (const Arc& a : arcs) {
      std::size_t y = static_cast<std::size_t>(a.head);
      if (settled[y] || (allowed && !(*allowed)[y])) continue;
      Length nd = sat_add(d, a.length);
      if (!finite(nd)) continue;
      if (nd < out.dist[y]) {
        out.dist[y] = nd;
        out.parent[y] = x;
        out.parent_edge[y] = a.edge;
        heap.emplace(nd, a.head);
      } else if (nd == out.dist[y] && x < out.parent[y]) {
        out.parent[y] = x;
        out.parent_edge[y] = a.edge;
      }
    }
  }
  return out;
}

DistanceMap sssp(const LabeledGraph& g, Vertex source, Direction dir, const std::vector<char>* allowed) {
  return sssp(g, std::span<const Vertex>(&source, 1), dir, allowed);
}

void sssp_distances(const LabeledGraph& g, std::span<const Vertex> sources, Direction dir, std::vector<Length>& dist,
                    Length limit) {
  std::size_t n = g.vertex_count();
  dist.assign(n, kInfinity);
  MinHeap heap;
  for (Vertex s : sources) {
    dist[static_cast<std::size_t>(s)] = 0;
    heap.emplace(0, s);
  }
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[static_cast<std::size_t>(x)]) continue;
    auto arcs = dir == Direction::kForward ? g.out_arcs(x) : g.in_arcs(x);
    for (const Arc& a : arcs) {
      Length nd = sat_add(d, a.length);
      if (nd > limit) continue;
      std::size_t y = static_cast<std::size_t>(a.head);
      if (nd < dist[y]) {
        dist[y] = nd;
        heap.emplace(nd, a.head);
      }
    }
  }
}

void sssp_distances(const LabeledGraph& g, Vertex source, Direction dir, std::vector<Length>& dist, Length limit) {
  sssp_distances(g, std::span<const Vertex>(&source, 1), dir, dist, limit);
}

void sssp_undirected(const LabeledGraph& g, Vertex source, std::vector<Length>& dist, std::vector<Vertex>* parent,
                     std::vector<EdgeId>* parent_edge) {
  std::size_t n = g.vertex_count();
  dist.assign(n, kInfinity);
  if (parent) parent->assign(n, kNoVertex);
  if (parent_edge) parent_edge->assign(n, kNoEdge);
  std::vector<char> settled(n, 0);
  MinHeap heap;
  dist[static_cast<std::size_t>(source)] = 0;
  heap.emplace(0, source);
  auto relax = [&](Vertex x, Length d, const Arc& a) {
    const Edge& e = g.edge(a.edge);
    Length len = std::min(e.forward, e.backward);
    std::size_t y = static_cast<std::size_t>(a.head);
    if (settled[y]) return;
    Length nd = sat_add(d, len);
    if (!finite(nd)) return;
    if (nd < dist[y]) {
      dist[y] = nd;
      if (parent) (*parent)[y] = x;
      if (parent_edge) (*parent_edge)[y] = a.edge;
      heap.emplace(nd, a.head);
    } else if (nd == dist[y] && parent && x < (*parent)[y]) {
      (*parent)[y] = x;
      if (parent_edge) (*parent_edge)[y] = a.edge;
    }
  };
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(x)] || d != dist[static_cast<std::size_t>(x)]) continue;
    settled[static_cast<std::size_t>(x)] = 1;
    for (const Arc& a : g.out_arcs(x)) relax(x, d, a);
    if (g.directed())
      for (const Arc& a : g.in_arcs(x)) relax(x, d, a);
  }
}

}  // namespace vlo
