#pragma once

#include <span>
#include <vector>

#include "vlo/graph.hpp"

namespace vlo {

// Dart 2e runs edge.u -> edge.v, dart 2e+1 runs edge.v -> edge.u.
inline constexpr Dart kNoDart = -1;
inline constexpr EdgeId dart_edge(Dart d) { return d >> 1; }
inline constexpr Dart twin(Dart d) { return d ^ 1; }
inline constexpr Dart make_dart(EdgeId e, bool reversed) { return 2 * e + (reversed ? 1 : 0); }

inline Vertex dart_tail(const LabeledGraph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.v : e.u;
}
inline Vertex dart_head(const LabeledGraph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.u : e.v;
}
// Length of travelling along the dart.
inline Length dart_length(const LabeledGraph& g, Dart d) {
  const Edge& e = g.edge(dart_edge(d));
  return (d & 1) ? e.backward : e.forward;
}

// Rotation system: darts leaving each vertex in counter-clockwise order.
// Faces are traced with next(d) = rotation predecessor of twin(d), which walks
// bounded faces of a straight-line drawing counter-clockwise.
class Embedding {
 public:
  Embedding() = default;

  static Embedding from_coordinates(const LabeledGraph& g);
  static Embedding from_rotation(std::vector<std::vector<Dart>> rotation, std::size_t edge_count);

  std::size_t vertex_count() const { return rotation_.size(); }
  std::size_t dart_count() const { return tail_.size(); }
  std::span<const Dart> rotation(Vertex v) const { return rotation_[static_cast<std::size_t>(v)]; }
  Vertex tail(Dart d) const { return tail_[static_cast<std::size_t>(d)]; }
  Vertex head(Dart d) const { return tail_[static_cast<std::size_t>(twin(d))]; }

  Dart rot_next(Dart d) const;
  Dart rot_prev(Dart d) const;
  Dart face_next(Dart d) const { return rot_prev(twin(d)); }

  std::vector<std::vector<Dart>> faces() const;
  // Face index for every dart, consistent with faces().
  std::vector<int> face_of_darts() const;

  Vertex add_vertex();
  // Places the darts of a new edge: `d` right after `after` at tail(d), and
  // twin(d) right before `before` at head(d).
  void insert_edge(Dart d, Vertex tail_of_d, Dart after, Dart before);
  // Appends the darts of a new edge at the end of both rotations.
  void append_edge(Dart d, Vertex tail_of_d);

  // Darts in a face walk of the leftmost-lowest vertex's unbounded wedge.
  static Dart outer_dart(const LabeledGraph& g, const Embedding& emb);

  // V - E + F == 1 + components for a valid embedding.
  bool euler_consistent() const;

 private:
  void grow_darts(std::size_t count);
  void reindex(Vertex v);

  std::vector<std::vector<Dart>> rotation_;
  std::vector<Vertex> tail_;
  std::vector<int> pos_;
};

// Adds edges of length `infinite_length` (role kTriangulation) inside every face
// with more than three darts, except the face containing `keep_face` when given.
// Returns the number of edges added.
std::size_t triangulate_faces(LabeledGraph& g, Embedding& emb, Length infinite_length, Dart keep_face = kNoDart);

// Triangulates every bounded face of the straight-line drawing of g.
LabeledGraph triangulate(const LabeledGraph& g);

}  // namespace vlo
