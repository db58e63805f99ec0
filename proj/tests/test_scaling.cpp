#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_checks.hpp"
#include "support.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/generators.hpp"
#include "vlo/scaling.hpp"

using namespace vlo;

namespace {

LabeledGraph make(GraphKind kind, std::size_t n, Length lo, Length hi, Label labels, std::uint64_t seed,
                  bool directed = false) {
  GenOptions o;
  o.kind = kind;
  o.n = n;
  o.min_length = lo;
  o.max_length = hi;
  o.labels = labels;
  o.seed = seed;
  o.directed = directed;
  return generate_graph(o);
}

bool stretch_ok(Length d, Length truth, Rational eps) { return d >= truth && within_stretch(d, truth, eps); }

void check_capture(const LabeledGraph& g, Length alpha, int pairs, std::uint64_t seed) {
  AlphaFamily f = build_alpha_family(g, alpha);
  auto d = testing::all_pairs(g);
  std::size_t n = g.vertex_count();
  CHECK(f.total_vertices() <= 3 * n + f.members.size());
  for (const auto& m : f.members) CHECK(m.embedding.euler_consistent());
  std::mt19937_64 rng(seed);
  int done = 0;
  for (int guard = 0; done < pairs && guard < 100 * pairs; ++guard) {
    Vertex v = static_cast<Vertex>(rng() % n);
    Vertex w = static_cast<Vertex>(rng() % n);
    Length truth = d[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
    if (truth > alpha) continue;
    ++done;
    Length best = kInfinity;
    for (int m : f.designated(v)) {
      Length x = testing::member_distances(f, m, v)[static_cast<std::size_t>(w)];
      CHECK(x >= truth);
      best = std::min(best, x);
    }
    CHECK(best == truth);
  }
  CHECK(done == pairs);
}

}  // namespace

TEST_CASE("large alpha gives a single member") {
  LabeledGraph g = make(GraphKind::kGrid, 25, 1, 3, 2, 1);
  AlphaFamily f = build_alpha_family(g, 1000);
  REQUIRE(f.members.size() == 1);
  CHECK(f.members[0].graph.vertex_count() == 25);
  CHECK(f.members[0].virtual_root == kNoVertex);
  CHECK(f.total_vertices() <= 3 * 25);
  check_capture(g, 1000, 100, 1);
}

TEST_CASE("10x10 unit grid with alpha 6 captures every short distance") {
  LabeledGraph g = make(GraphKind::kGrid, 100, 1, 1, 2, 2);
  check_capture(g, 6, 200, 3);
}

TEST_CASE("capture and size on weighted and directed instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    bool directed = seed % 3 == 0;
    LabeledGraph g = make(seed % 2 ? GraphKind::kTriangulatedRandom : GraphKind::kGrid, 120 + 20 * seed, 1, 15, 3,
                          seed, directed);
    for (Length alpha : {Length(8), Length(20), Length(45)}) check_capture(g, alpha, 150, seed);
  }
}

TEST_CASE("member trees are alpha-layered") {
  LabeledGraph g = make(GraphKind::kTriangulatedRandom, 200, 1, 10, 3, 4);
  Length alpha = 12;
  AlphaFamily f = build_alpha_family(g, alpha);
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    const FamilyMember& m = f.members[i];
    DecompositionTree t = decompose(m.graph, m.embedding, f.options(static_cast<int>(i)));
    Length base = m.virtual_root == kNoVertex ? 0 : f.big;
    for (Vertex x = 0; x < static_cast<Vertex>(m.graph.vertex_count()); ++x) {
      if (x == m.virtual_root) continue;
      CHECK(t.tree_distance(x) - base < 3 * alpha);
    }
    for (std::size_t p = 0; p < t.path_count(); ++p) CHECK(t.path(static_cast<int>(p)).length() <= alpha);
  }
}

TEST_CASE("stretch oracle: trivial answers and random queries") {
  LabeledGraph g = make(GraphKind::kGrid, 100, 1, 9, 4, 5);
  Rational eps(1, 2);
  StretchOracle o(g, eps);
  ExactOracle ex(g);
  CHECK(o.query(3, g.label(3)) == 0);
  CHECK(o.query(3, 42) == kInfinity);
  std::mt19937_64 rng(6);
  for (int q = 0; q < 500; ++q) {
    Vertex u = static_cast<Vertex>(rng() % 100);
    Label l = static_cast<Label>(rng() % 5);
    CHECK(stretch_ok(o.query(u, l), ex.query(u, l), eps));
  }
}

TEST_CASE("stretch oracle updates: relabel, revert and lockstep") {
  LabeledGraph g = make(GraphKind::kTriangulatedRandom, 120, 1, 20, 4, 7);
  Rational eps(1, 4);
  StretchOracle o(g, eps);
  ExactOracle ex(g);
  o.update(17, 9);
  CHECK(o.query(17, 9) == 0);
  std::vector<Length> before;
  for (Vertex u = 0; u < 120; ++u) before.push_back(o.query(u, 2));
  Label old = o.label(40);
  o.update(40, 2);
  o.update(40, old);
  for (Vertex u = 0; u < 120; ++u) CHECK(o.query(u, 2) == before[static_cast<std::size_t>(u)]);
  ex.update(17, 9);

  std::mt19937_64 rng(8);
  for (int op = 0; op < 600; ++op) {
    Vertex v = static_cast<Vertex>(rng() % 120);
    Label l = static_cast<Label>(rng() % 5);
    if (op % 2 == 0) {
      o.update(v, l);
      ex.update(v, l);
      continue;
    }
    Length truth = ex.query(v, l);
    CHECK(stretch_ok(o.query(v, l), truth, eps));
  }
}

TEST_CASE("stretch oracle over directed scale oracles") {
  LabeledGraph g = make(GraphKind::kGrid, 64, 1, 12, 3, 9, true);
  Rational eps(1, 2);
  StretchOracle o(g, eps, ScaleKind::kDirected);
  ExactOracle ex(g);
  for (Vertex u = 0; u < 64; ++u)
    for (Label l = 0; l < 4; ++l) CHECK(stretch_ok(o.query_from_label(l, u), ex.query_from_label(l, u), eps));
}
