#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/fast_update_oracle.hpp"
#include "vlo/generators.hpp"

using namespace vlo;

namespace {

LabeledGraph make(GraphKind kind, std::size_t n, Length hi, Label labels, std::uint64_t seed) {
  GenOptions o;
  o.kind = kind;
  o.n = n;
  o.max_length = hi;
  o.labels = labels;
  o.seed = seed;
  return generate_graph(o);
}

bool stretch_ok(Length d, Length truth, Rational eps) { return d >= truth && within_stretch(d, truth, eps); }

// Labeled owners' portal entries of one piece must match the index contents.
bool conserved(const FastUpdateOracle& o) {
  std::vector<std::size_t> expect(o.tree().path_count(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(o.vertex_count()); ++v)
    if (o.label(v) != kNoLabel)
      for (const auto& p : o.portals(v)) ++expect[p.path];
  for (std::size_t p = 0; p < expect.size(); ++p)
    if (o.index_entries(static_cast<int>(p)) != expect[p]) return false;
  return true;
}

}  // namespace

TEST_CASE("tiny graphs need no portals") {
  LabeledGraph g = make(GraphKind::kGrid, 3, 4, 2, 1);
  FastUpdateOracle o(g, Rational(1, 2));
  for (Vertex v = 0; v < 3; ++v) CHECK(o.portals(v).empty());
  ExactOracle ex(g);
  for (Vertex u = 0; u < 3; ++u)
    for (Label l = 0; l < 3; ++l) CHECK(o.query(u, l) == ex.query(u, l));
}

TEST_CASE("single label enrolls every slot") {
  LabeledGraph g = make(GraphKind::kTriangulatedRandom, 90, 9, 1, 2);
  FastUpdateOracle o(g, Rational(1, 4));
  for (std::size_t p = 0; p < o.tree().path_count(); ++p)
    CHECK(o.index_entries(static_cast<int>(p)) == o.slot_count(static_cast<int>(p)));
  CHECK(conserved(o));
}

TEST_CASE("portal sets cover multiplicatively on every ancestor piece") {
  LabeledGraph g = make(GraphKind::kGrid, 64, 1, 3, 3);
  Rational eps(1, 4);
  FastUpdateOracle o(g, eps);
  const DecompositionTree& t = o.tree();
  for (Vertex v = 0; v < 64; ++v) {
    for (int r : t.ancestors(t.leaf_of(v))) {
      const DecompositionNode& nd = t.node(r);
      auto truth = testing::bellman_ford(nd.graph, {nd.local(v)});
      for (int p : nd.paths) {
        const SeparatorPath& sp = t.path(p);
        for (std::size_t j = 0; j < sp.vertices.size(); ++j) {
          Length best = kInfinity;
          for (const auto& po : o.portals(v))
            if (static_cast<int>(po.path) == p) {
              CHECK(po.dist == truth[static_cast<std::size_t>(nd.local(sp.vertices[po.pos]))]);
              best = std::min(best, po.dist + std::abs(sp.h[j] - sp.h[po.pos]));
            }
          CHECK(within_stretch(best, truth[static_cast<std::size_t>(nd.local(sp.vertices[j]))], eps));
        }
      }
    }
  }
}

TEST_CASE("prefix and suffix probes equal a naive scan of the slots") {
  LabeledGraph g = make(GraphKind::kGrid, 100, 9, 4, 5);
  FastUpdateOracle o(g, Rational(1, 2));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Vertex u = static_cast<Vertex>(rng() % 100);
    Label l = static_cast<Label>(rng() % 4);
    for (const auto& po : o.portals(u)) {
      const SeparatorPath& sp = o.tree().path(static_cast<int>(po.path));
      Length naive_pre = kInfinity, naive_suf = kInfinity;
      for (Vertex w = 0; w < 100; ++w) {
        if (o.label(w) != l) continue;
        for (const auto& pw : o.portals(w)) {
          if (pw.path != po.path) continue;
          if (pw.pos <= po.pos) naive_pre = std::min(naive_pre, po.dist + sp.h[po.pos] - sp.h[pw.pos] + pw.dist);
          if (pw.pos >= po.pos) naive_suf = std::min(naive_suf, po.dist + sp.h[pw.pos] - sp.h[po.pos] + pw.dist);
        }
      }
      auto pre = o.prefix_min(static_cast<int>(po.path), l, o.first_slot(static_cast<int>(po.path), po.pos + 1));
      auto suf = o.suffix_min(static_cast<int>(po.path), l, o.first_slot(static_cast<int>(po.path), po.pos) + 1);
      CHECK((pre ? po.dist + sp.h[po.pos] + pre->value : kInfinity) == naive_pre);
      CHECK((suf ? po.dist - sp.h[po.pos] + suf->value : kInfinity) == naive_suf);
    }
  }
}

TEST_CASE("10x10 grid stretch over random queries") {
  LabeledGraph g = make(GraphKind::kGrid, 100, 20, 5, 7);
  ExactOracle ex(g);
  for (Rational eps : {Rational(1, 2), Rational(1, 4)}) {
    FastUpdateOracle o(g, eps);
    std::mt19937_64 rng(11);
    for (int q = 0; q < 500; ++q) {
      Vertex u = static_cast<Vertex>(rng() % 100);
      Label l = static_cast<Label>(rng() % 6);
      CHECK(stretch_ok(o.query(u, l), ex.query(u, l), eps));
    }
  }
}

TEST_CASE("updates: no-op, revert and a 2000-op lockstep trace") {
  LabeledGraph g = make(GraphKind::kGrid, 100, 15, 4, 13);
  Rational eps(1, 2);
  FastUpdateOracle o(g, eps);
  ExactOracle ex(g);

  o.update(12, o.label(12));
  CHECK(o.counters().update_touches == 0);
  std::vector<std::optional<SlotValue>> probes;
  auto snapshot = [&] {
    std::vector<std::optional<SlotValue>> out;
    for (std::size_t p = 0; p < o.tree().path_count(); ++p)
      for (Label l = 0; l < 4; ++l)
        for (std::uint32_t s = 1; s <= o.slot_count(static_cast<int>(p)); ++s) {
          out.push_back(o.prefix_min(static_cast<int>(p), l, s));
          out.push_back(o.suffix_min(static_cast<int>(p), l, s));
        }
    return out;
  };
  probes = snapshot();
  Label old = o.label(12);
  o.update(12, (old + 1) % 4);
  CHECK(o.query(12, (old + 1) % 4) == 0);
  o.update(12, old);
  CHECK(snapshot() == probes);

  std::mt19937_64 rng(21);
  for (int op = 0; op < 2000; ++op) {
    Vertex v = static_cast<Vertex>(rng() % 100);
    Label l = static_cast<Label>(rng() % 6);
    if (op % 2 == 0) {
      o.update(v, l);
      ex.update(v, l);
      if (op % 20 == 0) CHECK(conserved(o));
      continue;
    }
    CHECK(stretch_ok(o.query(v, l), ex.query(v, l), eps));
  }
  CHECK(conserved(o));
}

TEST_CASE("triangulated random instances") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    LabeledGraph g = make(GraphKind::kTriangulatedRandom, 150 + 30 * seed, 50, 4, seed);
    auto d = testing::all_pairs(g);
    Rational eps(1, 4);
    FastUpdateOracle o(g, eps);
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u)
      for (Label l = 0; l < 4; ++l) CHECK(stretch_ok(o.query(u, l), testing::label_distance(d, g.labels(), u, l), eps));
  }
}
