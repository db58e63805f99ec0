#include "vlo/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <stdexcept>

namespace vlo {

namespace {

std::uint64_t arc_key(Vertex u, Vertex v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

Vertex LabeledGraph::add_vertex(Point p, Label label) {
  points_.push_back(p);
  labels_.push_back(label);
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<Vertex>(points_.size() - 1);
}

EdgeId LabeledGraph::add_edge(Vertex u, Vertex v, Length length, EdgeRole role) {
  if (!directed_) return add_edge_pair(u, v, length, length, role);
  auto it = open_arc_.find(arc_key(u, v));
  if (it != open_arc_.end()) {
    EdgeId e = it->second;
    open_arc_.erase(it);
    Edge& ed = edges_[static_cast<std::size_t>(e)];
    // The edge was stored as v->u, so u->v is its backward direction.
    ed.backward = length;
    out_[static_cast<std::size_t>(u)].push_back({v, length, e});
    in_[static_cast<std::size_t>(v)].push_back({u, length, e});
    return e;
  }
  EdgeId e = add_edge_pair(u, v, length, kInfinity, role);
  open_arc_.emplace(arc_key(v, u), e);
  return e;
}

EdgeId LabeledGraph::add_edge_pair(Vertex u, Vertex v, Length forward, Length backward, EdgeRole role,
                                   EdgeId origin) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= vertex_count() || static_cast<std::size_t>(v) >= vertex_count())
    throw std::out_of_range("edge endpoint out of range");
  Edge ed;
  ed.u = u;
  ed.v = v;
  ed.forward = forward;
  ed.backward = backward;
  ed.role = role;
  ed.origin = origin;
  edges_.push_back(ed);
  EdgeId e = static_cast<EdgeId>(edges_.size() - 1);
  link(e);
  return e;
}

void LabeledGraph::link(EdgeId e) {
  const Edge& ed = edges_[static_cast<std::size_t>(e)];
  if (finite(ed.forward)) {
    out_[static_cast<std::size_t>(ed.u)].push_back({ed.v, ed.forward, e});
    in_[static_cast<std::size_t>(ed.v)].push_back({ed.u, ed.forward, e});
  }
  if (finite(ed.backward)) {
    out_[static_cast<std::size_t>(ed.v)].push_back({ed.u, ed.backward, e});
    in_[static_cast<std::size_t>(ed.u)].push_back({ed.v, ed.backward, e});
  }
}

std::size_t LabeledGraph::arc_count() const {
  std::size_t c = 0;
  for (const auto& a : out_) c += a.size();
  return c;
}

Length LabeledGraph::total_original_length() const {
  Length s = 0;
  for (const Edge& e : edges_) {
    if (e.role != EdgeRole::kOriginal) continue;
    if (finite(e.forward)) s += e.forward;
    if (finite(e.backward) && (directed_ || !finite(e.forward))) s += e.backward;
  }
  return s;
}

Length LabeledGraph::max_length() const {
  Length m = 0;
  for (const Edge& e : edges_) {
    if (e.role != EdgeRole::kOriginal) continue;
    if (finite(e.forward)) m = std::max(m, e.forward);
    if (finite(e.backward)) m = std::max(m, e.backward);
  }
  return m;
}

Length LabeledGraph::length_ratio() const {
  Length lo = kInfinity;
  Length hi = 0;
  for (const Edge& e : edges_) {
    if (e.role != EdgeRole::kOriginal) continue;
    for (Length l : {e.forward, e.backward}) {
      if (!finite(l) || l <= 0) continue;
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  }
  if (hi == 0) return 1;
  return (hi + lo - 1) / lo;
}

LabeledGraph LabeledGraph::reversed() const {
  LabeledGraph r(directed_);
  for (std::size_t v = 0; v < vertex_count(); ++v) r.add_vertex(points_[v], labels_[v]);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    r.add_edge_pair(e.u, e.v, e.backward, e.forward, e.role, e.origin);
  }
  return r;
}

Diagnostics validate(const LabeledGraph& g) {
  Diagnostics d;
  std::size_t n = g.vertex_count();
  std::size_t m = g.edge_count();
  if (n >= 3 && m > 3 * n - 6) {
    d.too_many_edges = true;
    d.messages.push_back("edge count " + std::to_string(m) + " exceeds 3n-6 = " + std::to_string(3 * n - 6));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = g.edge(static_cast<EdgeId>(i));
    if (e.forward < 0 || e.backward < 0) {
      d.negative_length = true;
      d.messages.push_back("edge " + std::to_string(i) + " has negative length");
    }
    if (e.u == e.v) {
      d.self_loop = true;
      d.messages.push_back("edge " + std::to_string(i) + " is a self loop");
    }
  }
  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (auto arcs : {g.out_arcs(x), g.in_arcs(x)}) {
        for (const Arc& a : arcs) {
          if (seen[static_cast<std::size_t>(a.head)]) continue;
          seen[static_cast<std::size_t>(a.head)] = 1;
          ++reached;
          stack.push_back(a.head);
        }
      }
    }
    if (reached != n) {
      d.disconnected = true;
      d.messages.push_back("underlying graph is disconnected");
    }
  }
  return d;
}

namespace {

double orient(Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

bool proper_cross(Point a, Point b, Point c, Point d) {
  double o1 = orient(a, b, c);
  double o2 = orient(a, b, d);
  double o3 = orient(c, d, a);
  double o4 = orient(c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

}  // namespace

std::vector<std::pair<EdgeId, EdgeId>> crossing_edges(const LabeledGraph& g) {
  std::vector<std::pair<EdgeId, EdgeId>> out;
  auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& a = edges[i];
      const Edge& b = edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      if (proper_cross(g.position(a.u), g.position(a.v), g.position(b.u), g.position(b.v)))
        out.emplace_back(static_cast<EdgeId>(i), static_cast<EdgeId>(j));
    }
  }
  return out;
}

LabeledGraph read_graph(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  int directed = 0;
  if (!(in >> n >> m >> directed)) throw std::runtime_error("graph file: bad header");
  LabeledGraph g(directed != 0);
  for (std::size_t i = 0; i < n; ++i) {
    long long id = 0;
    Point p;
    long long label = 0;
    if (!(in >> id >> p.x >> p.y >> label)) throw std::runtime_error("graph file: bad vertex line " + std::to_string(i));
    if (id != static_cast<long long>(i)) throw std::runtime_error("graph file: vertex ids must be 0..n-1 in order");
    g.add_vertex(p, static_cast<Label>(label));
  }
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0;
    long long v = 0;
    long long len = 0;
    if (!(in >> u >> v >> len)) throw std::runtime_error("graph file: bad edge line " + std::to_string(i));
    if (u < 0 || v < 0 || u >= static_cast<long long>(n) || v >= static_cast<long long>(n))
      throw std::runtime_error("graph file: edge endpoint out of range on line " + std::to_string(i));
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Length>(len));
  }
  return g;
}

void write_graph(std::ostream& out, const LabeledGraph& g) {
  std::vector<std::tuple<Vertex, Vertex, Length>> lines;
  for (const Edge& e : g.edges()) {
    if (e.role != EdgeRole::kOriginal) continue;
    if (!g.directed()) {
      lines.emplace_back(e.u, e.v, e.forward);
      continue;
    }
    if (finite(e.forward)) lines.emplace_back(e.u, e.v, e.forward);
    if (finite(e.backward)) lines.emplace_back(e.v, e.u, e.backward);
  }
  out << g.vertex_count() << ' ' << lines.size() << ' ' << (g.directed() ? 1 : 0) << '\n';
  out.precision(17);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Point p = g.position(static_cast<Vertex>(v));
    out << v << ' ' << p.x << ' ' << p.y << ' ' << g.label(static_cast<Vertex>(v)) << '\n';
  }
  for (auto [u, v, l] : lines) out << u << ' ' << v << ' ' << l << '\n';
}

LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const LabeledGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file " + path);
  write_graph(out, g);
}

}  // namespace vlo
