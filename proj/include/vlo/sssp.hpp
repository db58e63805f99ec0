#pragma once

#include <span>
#include <vector>

#include "vlo/graph.hpp"

namespace vlo {

enum class Direction : std::uint8_t { kForward, kReverse };

struct DistanceMap {
  std::vector<Vertex> sources;
  Direction direction = Direction::kForward;
  std::vector<Length> dist;
  // Tree parent toward the sources; ties go to the smallest settled predecessor.
  std::vector<Vertex> parent;
  std::vector<EdgeId> parent_edge;

  Length operator[](Vertex v) const { return dist[static_cast<std::size_t>(v)]; }
};

// Dijkstra from a vertex set. Forward gives delta(S, v), reverse gives
// delta(v, S). `allowed`, when given, restricts the search to the vertices
// with a nonzero entry.
DistanceMap sssp(const LabeledGraph& g, std::span<const Vertex> sources, Direction dir = Direction::kForward,
                 const std::vector<char>* allowed = nullptr);
DistanceMap sssp(const LabeledGraph& g, Vertex source, Direction dir = Direction::kForward,
                 const std::vector<char>* allowed = nullptr);

// Distances only, written into `dist`. Vertices farther than `limit` are left
// at kInfinity.
void sssp_distances(const LabeledGraph& g, std::span<const Vertex> sources, Direction dir, std::vector<Length>& dist,
                    Length limit = kInfinity);
void sssp_distances(const LabeledGraph& g, Vertex source, Direction dir, std::vector<Length>& dist,
                    Length limit = kInfinity);

// Underlying undirected metric: each edge may be used either way at the
// smaller of its two lengths.
void sssp_undirected(const LabeledGraph& g, Vertex source, std::vector<Length>& dist, std::vector<Vertex>* parent,
                     std::vector<EdgeId>* parent_edge);

}  // namespace vlo
