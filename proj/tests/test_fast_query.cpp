#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/fast_query_oracle.hpp"
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

// Scale contract: never below the truth, and within eps*alpha when the truth is at most alpha.
bool scale_ok(Length d, Length truth, Rational eps, Length alpha) {
  if (d < truth) return false;
  if (!finite(truth) || truth > alpha) return true;
  return within_additive(d, truth, eps, alpha);
}

}  // namespace

TEST_CASE("even connections keep every vertex within one slice") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t len = 1 + rng() % 30;
    std::vector<Length> h{0};
    for (std::size_t i = 1; i < len; ++i) h.push_back(h.back() + 1 + static_cast<Length>(rng() % 6));
    Length alpha = h.back() + static_cast<Length>(rng() % 5);
    if (alpha == 0) alpha = 1;
    std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 12);
    auto c = even_connections(h, alpha, k);
    CHECK(c.size() <= static_cast<std::size_t>(k));
    CHECK(std::is_sorted(c.begin(), c.end()));
    for (Length x : h) {
      Length best = kInfinity;
      for (auto p : c) best = std::min(best, std::abs(x - h[p]));
      CHECK(best * k <= alpha);
    }
  }
}

TEST_CASE("small graphs are served by the leaf alone") {
  LabeledGraph g = make(GraphKind::kGrid, 4, 3, 2, 1);
  FastQueryScaleOracle o(g, 20, Rational(1, 2));
  CHECK(o.list_count() == 0);
  ExactOracle ex(g);
  for (Vertex u = 0; u < 4; ++u)
    for (Label l = 0; l < 3; ++l) CHECK(o.query(u, l) == ex.query(u, l));
}

TEST_CASE("8x8 grid structure: spacing, quantization and coverage") {
  LabeledGraph g = make(GraphKind::kGrid, 64, 1, 3, 4);
  auto d = testing::all_pairs(g);
  Length alpha = testing::diameter(d);
  Rational acc(3, 4);
  FastQueryScaleOracle o(g, alpha, acc);
  CHECK(o.intervals() == 4);
  Rational eps = acc / 3;
  const DecompositionTree& t = o.tree();
  for (std::size_t p = 0; p < t.path_count(); ++p) {
    const SeparatorPath& sp = t.path(static_cast<int>(p));
    const auto& c = o.connections(static_cast<int>(p));
    CHECK(c.size() <= 4);
    for (std::size_t j = 0; j < sp.vertices.size(); ++j) {
      Length gap = kInfinity;
      for (Vertex q : c) {
        auto at = std::find(sp.vertices.begin(), sp.vertices.end(), q) - sp.vertices.begin();
        gap = std::min(gap, std::abs(sp.h[j] - sp.h[static_cast<std::size_t>(at)]));
      }
      CHECK(within_additive(gap, 0, eps, alpha));
    }
  }
  for (std::size_t li = 0; li < o.list_count(); ++li) {
    auto info = o.list_info(li);
    const DecompositionNode& nd = t.node(info.node);
    auto truth = testing::bellman_ford(nd.graph, {nd.local(info.connection)});
    for (const auto& e : info.entries) {
      CHECK(e.distance == truth[static_cast<std::size_t>(nd.local(e.vertex))]);
      // delta <= quantized <= delta + eps*alpha, scaled by the interval count.
      Length scaled = e.quantum * alpha;
      CHECK(e.distance * o.intervals() <= scaled);
      CHECK(within_additive(scaled, e.distance * o.intervals(), eps, alpha * o.intervals()));
    }
  }
}

TEST_CASE("connections cover every vertex's route to each piece") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    LabeledGraph g = make(seed % 2 ? GraphKind::kTriangulatedRandom : GraphKind::kGrid, 120 + 20 * seed, 9, 3, seed);
    Length alpha = testing::diameter(testing::all_pairs(g));
    Rational acc(1, 2);
    Rational eps = acc / 3;
    FastQueryScaleOracle o(g, alpha, acc);
    const DecompositionTree& t = o.tree();
    for (std::size_t p = 0; p < t.path_count(); ++p) {
      const SeparatorPath& sp = t.path(static_cast<int>(p));
      const DecompositionNode& nd = t.node(sp.node);
      std::vector<std::vector<Length>> from_q;
      std::vector<Length> hq;
      for (Vertex q : o.connections(static_cast<int>(p))) {
        from_q.push_back(testing::bellman_ford(nd.graph, {nd.local(q)}));
        hq.push_back(sp.h[static_cast<std::size_t>(std::find(sp.vertices.begin(), sp.vertices.end(), q) - sp.vertices.begin())]);
      }
      for (std::size_t j = 0; j < sp.vertices.size(); ++j) {
        auto from_t = testing::bellman_ford(nd.graph, {nd.local(sp.vertices[j])});
        for (std::size_t x = 0; x < nd.vertices.size(); ++x) {
          Length best = kInfinity;
          for (std::size_t i = 0; i < from_q.size(); ++i) best = std::min(best, from_q[i][x] + std::abs(hq[i] - sp.h[j]));
          CHECK(within_additive(best, from_t[x], eps + eps, alpha));
        }
      }
    }
  }
}

TEST_CASE("scale contract over every vertex and label") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    std::size_t n = 64 + 27 * seed;
    LabeledGraph g = make(seed % 2 ? GraphKind::kGrid : GraphKind::kTriangulatedRandom, n, 12, 4, seed);
    auto d = testing::all_pairs(g);
    Length alpha = testing::diameter(d);
    for (Rational acc : {Rational(3, 4), Rational(1, 4)}) {
      FastQueryScaleOracle o(g, alpha, acc);
      for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
        for (Label l = 0; l < 5; ++l) {
          Length truth = testing::label_distance(d, g.labels(), u, l);
          CHECK(scale_ok(o.query(u, l), truth, acc, alpha));
        }
    }
  }
}

TEST_CASE("small alpha keeps answers sound and accurate within the scale") {
  LabeledGraph g = make(GraphKind::kGrid, 144, 5, 6, 8);
  auto d = testing::all_pairs(g);
  for (Length alpha : {Length(6), Length(15), Length(40)}) {
    Rational acc(1, 2);
    FastQueryScaleOracle o(g, alpha, acc);
    for (Vertex u = 0; u < 144; ++u)
      for (Label l = 0; l < 6; ++l) CHECK(scale_ok(o.query(u, l), testing::label_distance(d, g.labels(), u, l), acc, alpha));
  }
}

TEST_CASE("updates: locality, no-ops, revert and lockstep traces") {
  LabeledGraph g = make(GraphKind::kGrid, 100, 8, 4, 11);
  auto d = testing::all_pairs(g);
  Length alpha = testing::diameter(d);
  Rational acc(3, 4);
  FastQueryScaleOracle o(g, alpha, acc);
  ExactOracle ex(g);

  auto before = o.counters().update_touches;
  o.update(37, o.label(37));
  CHECK(o.counters().update_touches == before);
  Label old = o.label(37);
  std::vector<std::optional<std::uint32_t>> firsts;
  for (std::size_t li = 0; li < o.list_count(); ++li)
    for (Label l = 0; l < 4; ++l) firsts.push_back(o.first_id(li, l));
  o.update(37, 3 - old);
  CHECK(o.counters().update_touches - before == o.registrations(37));
  CHECK(o.query(37, 3 - old) == 0);
  o.update(37, old);
  std::size_t k = 0;
  for (std::size_t li = 0; li < o.list_count(); ++li)
    for (Label l = 0; l < 4; ++l) CHECK(o.first_id(li, l) == firsts[k++]);

  // Touches per update never exceed depth * pieces per node * intervals.
  const DecompositionTree& t = o.tree();
  std::size_t max_paths = 0;
  for (std::size_t id = 0; id < t.size(); ++id) max_paths = std::max(max_paths, t.node(static_cast<int>(id)).paths.size());
  for (Vertex v = 0; v < 100; ++v)
    CHECK(o.registrations(v) <= static_cast<std::size_t>(t.depth()) * max_paths * static_cast<std::size_t>(o.intervals()));

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Vertex> pick(0, 99);
  std::uniform_int_distribution<Label> lab(0, 5);
  for (int op = 0; op < 1000; ++op) {
    if (op % 2 == 0) {
      Vertex v = pick(rng);
      Label l = lab(rng);
      o.update(v, l);
      ex.update(v, l);
      continue;
    }
    Vertex u = pick(rng);
    Label l = lab(rng);
    CHECK(scale_ok(o.query(u, l), ex.query(u, l), acc, alpha));
  }
}

TEST_CASE("single label fills every list") {
  LabeledGraph g = make(GraphKind::kTriangulatedRandom, 80, 7, 1, 3);
  FastQueryScaleOracle o(g, 1000, Rational(1, 2));
  for (std::size_t li = 0; li < o.list_count(); ++li) CHECK(o.first_id(li, 0) == std::optional<std::uint32_t>(1));
  CHECK(o.query(5, 0) == 0);
  CHECK(o.query(5, 1) == kInfinity);
}
