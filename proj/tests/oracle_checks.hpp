// Brute-force audits of oracle internals, shared by unit and acceptance tests.
#pragma once

#include <random>

#include "support.hpp"
#include "vlo/directed_oracle.hpp"
#include "vlo/scaling.hpp"

namespace vlo::testing {

struct SetAudit {
  std::size_t checked = 0;
  std::size_t failures = 0;
};

// Stored label set of node `id`, label `l`, slot `s` must be a sound
// level(i)-covering set of the l-labeled vertices owned below the node; the
// query set of an own piece must reach level(i) + eps / 4.
inline void audit_directed_set(const DirectedScaleOracle& o, int id, Label l, std::size_t s, SetAudit& out) {
  const DecompositionTree& t = o.tree();
  const AccuracySchedule& sc = o.schedule();
  const DecompositionNode& nd = t.node(id);
  const auto& sl = o.slots(id);
  std::vector<Vertex> members;
  for (Vertex v : nd.vertices) {
    int leaf = t.leaf_of(v);
    if (leaf >= 0 && t.is_ancestor(id, leaf) && o.label(v) == l) members.push_back(v);
  }
  const ConnectionSet* set = o.label_set(id, l, s);
  ++out.checked;
  if (members.empty() || !set) {
    if (members.empty() != !set) ++out.failures;
    return;
  }
  const SeparatorPath& sp = t.path(sl[s]);
  const DecompositionNode& owner = t.node(sp.node);
  std::vector<Vertex> sources;
  for (Vertex v : members) sources.push_back(owner.local(v));
  auto all = dijkstra(owner.graph, sources);
  std::vector<Length> truth;
  for (Vertex q : sp.vertices) truth.push_back(all[static_cast<std::size_t>(owner.local(q))]);
  std::vector<Length> h(sp.h.begin(), sp.h.end());
  if (!covers_additive(*set, truth, h, o.alpha(), sc.level(nd.level), CoverMode::kFromSource, false) ||
      !sound(*set, truth) || set->size() > additive_size_bound(nd.leaf() ? sc.vertex : sc.vertex + sc.vertex))
    ++out.failures;
  std::size_t base = sl.size() - nd.paths.size();
  if (s >= base) {
    const ConnectionSet* star = o.query_set(id, l, s - base);
    ++out.checked;
    if (!star ||
        !covers_additive(*star, truth, h, o.alpha(), sc.level(nd.level) + sc.eps / 4, CoverMode::kFromSource,
                         false) ||
        !sound(*star, truth) || star->size() > additive_size_bound(sc.eps / 4))
      ++out.failures;
  }
}

// Every slot of every label up to max_label, nodes sampled with stride.
inline SetAudit audit_directed_sets(const DirectedScaleOracle& o, std::size_t stride = 1, Label max_label = 8) {
  SetAudit out;
  const DecompositionTree& t = o.tree();
  for (std::size_t id = 0; id < t.size(); id += stride)
    for (Label l = 0; l <= max_label; ++l)
      for (std::size_t s = 0; s < o.slots(static_cast<int>(id)).size(); ++s)
        audit_directed_set(o, static_cast<int>(id), l, s, out);
  return out;
}

// One random slot per node on the chain from v's leaf to the root for label
// l, plus `extra` uniformly random (node, label, slot) triples.
inline void audit_directed_sample(const DirectedScaleOracle& o, Vertex v, Label l, std::size_t extra, Label max_label,
                                  std::mt19937_64& rng, SetAudit& out) {
  const DecompositionTree& t = o.tree();
  auto pick_slot = [&](int id) { return static_cast<std::size_t>(rng() % o.slots(id).size()); };
  int leaf = t.leaf_of(v);
  if (leaf >= 0)
    for (int id : t.ancestors(leaf))
      if (!o.slots(id).empty()) audit_directed_set(o, id, l, pick_slot(id), out);
  for (std::size_t i = 0; i < extra; ++i) {
    int id = static_cast<int>(rng() % t.size());
    if (o.slots(id).empty()) continue;
    audit_directed_set(o, id, static_cast<Label>(rng() % (static_cast<std::uint64_t>(max_label) + 1)), pick_slot(id),
                       out);
  }
}

// Distances from global u inside one family member, with walks through the
// contracted vertex discarded.
inline std::vector<Length> member_distances(const AlphaFamily& f, int m, Vertex u) {
  const FamilyMember& mem = f.members[static_cast<std::size_t>(m)];
  Vertex local = kNoVertex;
  for (auto [id, x] : f.placements[static_cast<std::size_t>(u)])
    if (id == m) local = x;
  std::vector<Length> out(f.placements.size(), kInfinity);
  if (local == kNoVertex) return out;
  auto d = dijkstra(mem.graph, {local});
  for (std::size_t x = 0; x < d.size(); ++x)
    if (mem.global[x] != kNoVertex && d[x] < f.big) out[static_cast<std::size_t>(mem.global[x])] = d[x];
  return out;
}

}  // namespace vlo::testing
