#pragma once

#include <cstdint>
#include <string>

#include "vlo/graph.hpp"

namespace vlo {

enum class GraphKind : std::uint8_t { kGrid, kTriangulatedRandom };

GraphKind parse_graph_kind(const std::string& name);
std::string graph_kind_name(GraphKind kind);

struct GenOptions {
  GraphKind kind = GraphKind::kGrid;
  std::size_t n = 64;
  Length min_length = 1;
  Length max_length = 1;
  Label labels = 1;
  bool directed = false;
  std::uint64_t seed = 1;
};

// Vertices are laid out row-major on a near-square lattice; the last row may
// be partial. Grid uses lattice edges only; triangulated-random jitters the
// points and adds one random diagonal per complete cell. Directed graphs get
// both arcs of every edge with independent lengths.
LabeledGraph generate_graph(const GenOptions& opts);

}  // namespace vlo
