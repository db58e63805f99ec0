#include "vlo/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace vlo {

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "grid") return GraphKind::kGrid;
  if (name == "triangulated-random" || name == "triangulated") return GraphKind::kTriangulatedRandom;
  throw std::invalid_argument("unknown graph kind: " + name);
}

std::string graph_kind_name(GraphKind kind) {
  return kind == GraphKind::kGrid ? "grid" : "triangulated-random";
}

LabeledGraph generate_graph(const GenOptions& opts) {
  if (opts.n == 0) throw std::invalid_argument("graph needs at least one vertex");
  if (opts.min_length < 0 || opts.max_length < opts.min_length) throw std::invalid_argument("bad length range");
  if (opts.labels < 1) throw std::invalid_argument("need at least one label");

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Length> length(opts.min_length, opts.max_length);
  std::uniform_int_distribution<Label> label(0, opts.labels - 1);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::bernoulli_distribution coin(0.5);

  std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(opts.n))));
  std::size_t rows = (opts.n + cols - 1) / cols;
  bool jittered = opts.kind == GraphKind::kTriangulatedRandom;

  LabeledGraph g(opts.directed);
  for (std::size_t i = 0; i < opts.n; ++i) {
    Point p{static_cast<double>(i % cols), static_cast<double>(i / cols)};
    if (jittered) {
      p.x += jitter(rng);
      p.y += jitter(rng);
    }
    g.add_vertex(p, label(rng));
  }
  auto id = [&](std::size_t r, std::size_t c) -> std::int64_t {
    std::size_t i = r * cols + c;
    return c < cols && i < opts.n ? static_cast<std::int64_t>(i) : -1;
  };
  auto connect = [&](std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) return;
    Vertex u = static_cast<Vertex>(a);
    Vertex v = static_cast<Vertex>(b);
    if (opts.directed) {
      g.add_edge(u, v, length(rng));
      g.add_edge(v, u, length(rng));
    } else {
      g.add_edge(u, v, length(rng));
    }
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t here = id(r, c);
      if (here < 0) continue;
      connect(here, id(r, c + 1));
      connect(here, id(r + 1, c));
      if (jittered && id(r, c + 1) >= 0 && id(r + 1, c + 1) >= 0) {
        if (coin(rng))
          connect(here, id(r + 1, c + 1));
        else
          connect(id(r, c + 1), id(r + 1, c));
      }
    }
  }
  return g;
}

}  // namespace vlo
