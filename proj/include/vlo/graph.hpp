#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vlo/types.hpp"

namespace vlo {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class EdgeRole : std::uint8_t { kOriginal, kTriangulation, kVirtual };

// One undirected edge of the embedded graph. In directed mode the two arcs
// u->v and v->u share the edge; a missing arc has length kInfinity.
struct Edge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  Length forward = kInfinity;   // u -> v
  Length backward = kInfinity;  // v -> u
  EdgeRole role = EdgeRole::kOriginal;
  // Edge id in the graph this one was copied from, kNoEdge if it was created here.
  EdgeId origin = kNoEdge;
};

struct Arc {
  Vertex head;
  Length length;
  EdgeId edge;
};

class LabeledGraph {
 public:
  explicit LabeledGraph(bool directed = false) : directed_(directed) {}

  Vertex add_vertex(Point p = {}, Label label = kNoLabel);
  // Undirected mode: a new edge of the given length in both directions.
  // Directed mode: the arc u->v, merged into an existing edge {u,v} whose
  // u->v direction is still absent.
  EdgeId add_edge(Vertex u, Vertex v, Length length, EdgeRole role = EdgeRole::kOriginal);
  // Adds an edge with explicit lengths for both directions.
  EdgeId add_edge_pair(Vertex u, Vertex v, Length forward, Length backward, EdgeRole role,
                       EdgeId origin = kNoEdge);

  bool directed() const { return directed_; }
  std::size_t vertex_count() const { return points_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t arc_count() const;

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Arc> out_arcs(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const Arc> in_arcs(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }

  Point position(Vertex v) const { return points_[static_cast<std::size_t>(v)]; }
  Label label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
  void set_label(Vertex v, Label l) { labels_[static_cast<std::size_t>(v)] = l; }
  const std::vector<Label>& labels() const { return labels_; }

  // Sum of all finite original arc lengths; the triangulation length is one more.
  Length total_original_length() const;
  Length infinite_length() const { return total_original_length() + 1; }
  Length max_length() const;
  // Ratio of largest to smallest positive original length, rounded up.
  Length length_ratio() const;

  Vertex other(EdgeId e, Vertex x) const {
    const Edge& ed = edge(e);
    return ed.u == x ? ed.v : ed.u;
  }

  // Same vertices, edges and embedding with every arc reversed.
  LabeledGraph reversed() const;

 private:
  void link(EdgeId e);

  bool directed_;
  std::vector<Point> points_;
  std::vector<Label> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::unordered_map<std::uint64_t, EdgeId> open_arc_;  // directed merge lookup
};

struct Diagnostics {
  bool too_many_edges = false;
  bool negative_length = false;
  bool disconnected = false;
  bool self_loop = false;
  std::vector<std::string> messages;

  bool clean() const { return !too_many_edges && !negative_length && !disconnected && !self_loop; }
};

Diagnostics validate(const LabeledGraph& g);

// Pairs of edges whose straight-line drawings cross. Quadratic; meant for checks.
std::vector<std::pair<EdgeId, EdgeId>> crossing_edges(const LabeledGraph& g);

// Text format: header "n m directed", n lines "id x y label", m lines "u v length".
LabeledGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const LabeledGraph& g);
LabeledGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const LabeledGraph& g);

}  // namespace vlo
