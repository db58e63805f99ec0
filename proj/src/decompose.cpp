#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

#include "vlo/decomposition.hpp"
#include "vlo/sssp.hpp"

namespace vlo {

class DecompositionBuilder {
 public:
  DecompositionBuilder(const LabeledGraph& g, const Embedding& emb, const DecompositionOptions& opts)
      : g_(g), emb_(emb), opts_(opts), n_(g.vertex_count()) {}

  DecompositionTree build();

 private:
  struct Score {
    bool infeasible = true;
    std::size_t own = 0;
    std::size_t count = 0;
    std::size_t cycle = 0;
    auto key() const { return std::make_tuple(infeasible, own, count, cycle); }
  };

  bool own(Vertex global) const {
    return !sep_flag_[static_cast<std::size_t>(global)] && !tree_.is_virtual(global);
  }
  EdgeId origin_of(const DecompositionNode& nd, EdgeId e) const {
    return nd.id == 0 ? e : nd.graph.edge(e).origin;
  }

  void make_root();
  void process(int id);
  void local_tree(const DecompositionNode& nd);
  Vertex lca(Vertex a, Vertex b) const;
  // Evaluates the cycle closed by edge e; fills side_ marks when `collect`.
  Score evaluate(const DecompositionNode& nd, EdgeId e, bool collect);
  void add_pieces(int id, const std::vector<Vertex>& branch);
  int make_child(int parent, const std::vector<Vertex>& locals);
  void finish();

  const LabeledGraph& g_;
  const Embedding& emb_;
  const DecompositionOptions& opts_;
  std::size_t n_;
  DecompositionTree tree_;
  std::vector<char> sep_flag_;
  std::vector<EdgeId> tree_edge_;  // root-level parent edge per vertex

  // Per-node scratch, sized to the largest node.
  std::vector<EdgeId> lpe_;
  std::vector<Vertex> lpar_;
  std::vector<int> ldepth_;
  Vertex lroot_ = kNoVertex;
  std::vector<int> cyc_mark_, side_mark_, pre_mark_;
  int stamp_ = 0;
  std::vector<Dart> darts_;
  std::vector<Vertex> cycle_, prefix_, side_, stack_;
};

void DecompositionBuilder::make_root() {
  Length inf = opts_.infinite_length > 0 ? opts_.infinite_length : g_.infinite_length();
  tree_.infinite_length_ = inf;
  tree_.virtual_ = opts_.virtual_vertices;
  if (!tree_.virtual_.empty() && tree_.virtual_.size() != n_) throw std::invalid_argument("virtual mask size mismatch");

  DecompositionNode root;
  root.id = 0;
  root.level = 1;
  root.graph = LabeledGraph(g_.directed());
  for (std::size_t v = 0; v < n_; ++v) {
    root.vertices.push_back(static_cast<Vertex>(v));
    root.graph.add_vertex(g_.position(static_cast<Vertex>(v)));
  }
  // Absent directions get the triangulation length so the tree reaches everything.
  for (const Edge& e : g_.edges())
    root.graph.add_edge_pair(e.u, e.v, finite(e.forward) ? e.forward : inf, finite(e.backward) ? e.backward : inf,
                             e.role);
  root.embedding = emb_;
  if (root.embedding.dart_count() != 2 * g_.edge_count()) throw std::invalid_argument("embedding does not match graph");
  triangulate_faces(root.graph, root.embedding, inf);

  if (opts_.root < 0 || static_cast<std::size_t>(opts_.root) >= n_) throw std::invalid_argument("tree root out of range");
  DistanceMap t = sssp(root.graph, opts_.root);
  for (std::size_t v = 0; v < n_; ++v)
    if (!finite(t.dist[v])) throw std::logic_error("tree root does not reach every vertex");
  tree_.tree_root_ = opts_.root;
  tree_.tree_parent_ = t.parent;
  tree_.tree_dist_ = t.dist;
  tree_edge_ = t.parent_edge;
  tree_.nodes_.push_back(std::move(root));

  sep_flag_.assign(n_, 0);
  tree_.leaf_of_.assign(n_, -1);
  std::size_t cap = n_ + 1;
  lpe_.resize(cap);
  lpar_.resize(cap);
  ldepth_.resize(cap);
  cyc_mark_.assign(cap, 0);
  side_mark_.assign(cap, 0);
  pre_mark_.assign(cap, 0);
}

void DecompositionBuilder::local_tree(const DecompositionNode& nd) {
  std::size_t nr = nd.vertices.size();
  std::fill(lpe_.begin(), lpe_.begin() + static_cast<std::ptrdiff_t>(nr), kNoEdge);
  std::fill(lpar_.begin(), lpar_.begin() + static_cast<std::ptrdiff_t>(nr), kNoVertex);
  for (std::size_t e = 0; e < nd.graph.edge_count(); ++e) {
    EdgeId o = origin_of(nd, static_cast<EdgeId>(e));
    if (o == kNoEdge) continue;
    const Edge& ed = nd.graph.edge(static_cast<EdgeId>(e));
    for (Vertex x : {ed.u, ed.v}) {
      Vertex gx = nd.vertices[static_cast<std::size_t>(x)];
      if (gx != tree_.tree_root_ && tree_edge_[static_cast<std::size_t>(gx)] == o) {
        lpe_[static_cast<std::size_t>(x)] = static_cast<EdgeId>(e);
        lpar_[static_cast<std::size_t>(x)] = nd.graph.other(static_cast<EdgeId>(e), x);
      }
    }
  }
  lroot_ = nd.local(tree_.tree_root_);
  if (lroot_ == kNoVertex) throw std::logic_error("node lost the tree root");
  std::fill(ldepth_.begin(), ldepth_.begin() + static_cast<std::ptrdiff_t>(nr), -1);
  ldepth_[static_cast<std::size_t>(lroot_)] = 0;
  for (std::size_t v = 0; v < nr; ++v) {
    if (ldepth_[v] >= 0) continue;
    stack_.clear();
    Vertex x = static_cast<Vertex>(v);
    while (ldepth_[static_cast<std::size_t>(x)] < 0) {
      stack_.push_back(x);
      x = lpar_[static_cast<std::size_t>(x)];
      if (x == kNoVertex) throw std::logic_error("tree does not span a node");
    }
    int d = ldepth_[static_cast<std::size_t>(x)];
    while (!stack_.empty()) {
      ldepth_[static_cast<std::size_t>(stack_.back())] = ++d;
      stack_.pop_back();
    }
  }
}

Vertex DecompositionBuilder::lca(Vertex a, Vertex b) const {
  while (ldepth_[static_cast<std::size_t>(a)] > ldepth_[static_cast<std::size_t>(b)]) a = lpar_[static_cast<std::size_t>(a)];
  while (ldepth_[static_cast<std::size_t>(b)] > ldepth_[static_cast<std::size_t>(a)]) b = lpar_[static_cast<std::size_t>(b)];
  while (a != b) {
    a = lpar_[static_cast<std::size_t>(a)];
    b = lpar_[static_cast<std::size_t>(b)];
  }
  return a;
}

DecompositionBuilder::Score DecompositionBuilder::evaluate(const DecompositionNode& nd, EdgeId e, bool collect) {
  const LabeledGraph& h = nd.graph;
  const Edge& ed = h.edge(e);
  Vertex a = ed.u;
  Vertex b = ed.v;
  Vertex top = lca(a, b);
  auto up_dart = [&](Vertex x) { return make_dart(lpe_[static_cast<std::size_t>(x)], h.edge(lpe_[static_cast<std::size_t>(x)]).u != x); };

  ++stamp_;
  darts_.clear();
  cycle_.clear();
  prefix_.clear();
  darts_.push_back(make_dart(e, false));
  for (Vertex x = b; x != top; x = lpar_[static_cast<std::size_t>(x)]) darts_.push_back(up_dart(x));
  std::size_t mark = darts_.size();
  for (Vertex x = a; x != top; x = lpar_[static_cast<std::size_t>(x)]) darts_.push_back(twin(up_dart(x)));
  std::reverse(darts_.begin() + static_cast<std::ptrdiff_t>(mark), darts_.end());
  for (Dart d : darts_) {
    Vertex x = nd.embedding.tail(d);
    cyc_mark_[static_cast<std::size_t>(x)] = stamp_;
    cycle_.push_back(x);
  }
  for (Vertex x = lpar_[static_cast<std::size_t>(top)]; x != kNoVertex; x = lpar_[static_cast<std::size_t>(x)]) {
    pre_mark_[static_cast<std::size_t>(x)] = stamp_;
    prefix_.push_back(x);
  }

  side_.clear();
  // Side flood reuses the classification routine's rotation rule.
  std::size_t k = darts_.size();
  stack_.clear();
  auto push = [&](Vertex y) {
    if (cyc_mark_[static_cast<std::size_t>(y)] == stamp_ || side_mark_[static_cast<std::size_t>(y)] == stamp_) return;
    side_mark_[static_cast<std::size_t>(y)] = stamp_;
    stack_.push_back(y);
  };
  for (std::size_t i = 0; i < k; ++i) {
    Dart in_twin = twin(darts_[(i + k - 1) % k]);
    for (Dart d = nd.embedding.rot_next(darts_[i]); d != in_twin; d = nd.embedding.rot_next(d)) push(nd.embedding.head(d));
  }
  std::size_t own_a = 0;
  std::size_t count_a = 0;
  while (!stack_.empty()) {
    Vertex x = stack_.back();
    stack_.pop_back();
    if (pre_mark_[static_cast<std::size_t>(x)] != stamp_) {
      ++count_a;
      if (own(nd.vertices[static_cast<std::size_t>(x)])) ++own_a;
      if (collect) side_.push_back(x);
    }
    for (Dart d : nd.embedding.rotation(x)) push(nd.embedding.head(d));
  }
  std::size_t own_sep = 0;
  for (Vertex x : cycle_)
    if (own(nd.vertices[static_cast<std::size_t>(x)])) ++own_sep;
  for (Vertex x : prefix_)
    if (own(nd.vertices[static_cast<std::size_t>(x)])) ++own_sep;
  std::size_t nr = nd.vertices.size();
  std::size_t count_b = nr - cycle_.size() - prefix_.size() - count_a;
  std::size_t own_b = nd.own_weight - own_sep - own_a;

  Score s;
  s.own = std::max(own_a, own_b);
  s.count = std::max(count_a, count_b);
  s.cycle = cycle_.size() + prefix_.size();
  s.infeasible = 3 * s.own > 2 * nd.own_weight || 3 * s.count > 2 * nr;
  return s;
}

void DecompositionBuilder::add_pieces(int id, const std::vector<Vertex>& branch) {
  // branch: global ids in tree order, each the tree child of the previous.
  SeparatorPath cur;
  auto close = [&] {
    if (!cur.vertices.empty()) {
      cur.node = id;
      tree_.nodes_[static_cast<std::size_t>(id)].paths.push_back(static_cast<int>(tree_.paths_.size()));
      tree_.paths_.push_back(std::move(cur));
    }
    cur = SeparatorPath();
  };
  Vertex prev = kNoVertex;
  for (Vertex x : branch) {
    if (tree_.is_virtual(x)) {
      close();
      prev = kNoVertex;
      continue;
    }
    if (prev != kNoVertex) {
      Length step = tree_.tree_distance(x) - tree_.tree_distance(prev);
      Length start = tree_.tree_distance(cur.vertices.front());
      if (step >= tree_.infinite_length_ || tree_.tree_distance(x) - start > opts_.max_piece) close();
    }
    Length base = cur.vertices.empty() ? tree_.tree_distance(x) : tree_.tree_distance(cur.vertices.front());
    cur.vertices.push_back(x);
    cur.h.push_back(tree_.tree_distance(x) - base);
    prev = x;
  }
  close();
}

int DecompositionBuilder::make_child(int parent, const std::vector<Vertex>& locals) {
  const DecompositionNode& p = tree_.nodes_[static_cast<std::size_t>(parent)];
  DecompositionNode c;
  c.id = static_cast<int>(tree_.nodes_.size());
  c.parent = parent;
  c.level = p.level + 1;
  c.graph = LabeledGraph(p.graph.directed());
  std::vector<Vertex> pmap(p.vertices.size(), kNoVertex);
  for (Vertex x : locals) {
    pmap[static_cast<std::size_t>(x)] = c.graph.add_vertex(p.graph.position(x));
    c.vertices.push_back(p.vertices[static_cast<std::size_t>(x)]);
  }
  std::vector<EdgeId> emap(p.graph.edge_count(), kNoEdge);
  for (std::size_t e = 0; e < p.graph.edge_count(); ++e) {
    const Edge& ed = p.graph.edge(static_cast<EdgeId>(e));
    Vertex u = pmap[static_cast<std::size_t>(ed.u)];
    Vertex v = pmap[static_cast<std::size_t>(ed.v)];
    if (u == kNoVertex || v == kNoVertex) continue;
    emap[e] = c.graph.add_edge_pair(u, v, ed.forward, ed.backward, ed.role, origin_of(p, static_cast<EdgeId>(e)));
  }
  std::vector<std::vector<Dart>> rot(locals.size());
  for (std::size_t i = 0; i < locals.size(); ++i)
    for (Dart d : p.embedding.rotation(locals[i])) {
      EdgeId ce = emap[static_cast<std::size_t>(dart_edge(d))];
      if (ce != kNoEdge) rot[i].push_back(make_dart(ce, d & 1));
    }
  c.embedding = Embedding::from_rotation(std::move(rot), c.graph.edge_count());
  triangulate_faces(c.graph, c.embedding, tree_.infinite_length_);
  tree_.nodes_.push_back(std::move(c));
  return static_cast<int>(tree_.nodes_.size() - 1);
}

void DecompositionBuilder::process(int id) {
  DecompositionNode& nd = tree_.nodes_[static_cast<std::size_t>(id)];
  nd.own_weight = 0;
  for (Vertex v : nd.vertices)
    if (own(v)) ++nd.own_weight;
  if (nd.own_weight <= opts_.leaf_size) return;

  local_tree(nd);
  std::vector<EdgeId> cand;
  for (std::size_t e = 0; e < nd.graph.edge_count(); ++e) {
    const Edge& ed = nd.graph.edge(static_cast<EdgeId>(e));
    if (ed.u == ed.v || lpe_[static_cast<std::size_t>(ed.u)] == static_cast<EdgeId>(e) ||
        lpe_[static_cast<std::size_t>(ed.v)] == static_cast<EdgeId>(e))
      continue;
    cand.push_back(static_cast<EdgeId>(e));
  }
  std::mt19937_64 rng(opts_.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(id));
  std::shuffle(cand.begin(), cand.end(), rng);

  EdgeId best = kNoEdge;
  Score best_score;
  std::size_t after_feasible = 0;
  for (EdgeId e : cand) {
    Score s = evaluate(nd, e, false);
    if (best == kNoEdge || s.key() < best_score.key()) {
      best = e;
      best_score = s;
    }
    if (!best_score.infeasible && opts_.extra_candidates > 0 && ++after_feasible > opts_.extra_candidates) break;
  }
  if (best == kNoEdge || best_score.own >= nd.own_weight) return;

  evaluate(nd, best, true);
  std::vector<Vertex> side_a = side_;
  std::vector<Vertex> sep = cycle_;
  sep.insert(sep.end(), prefix_.begin(), prefix_.end());
  std::sort(side_a.begin(), side_a.end());
  std::sort(sep.begin(), sep.end());

  // Branches: root to one end of the closing edge, and the rest of the path
  // to the other end below the common ancestor.
  const Edge& ed = nd.graph.edge(best);
  Vertex top = lca(ed.u, ed.v);
  std::vector<Vertex> branch_a, branch_b;
  for (Vertex x = ed.u; x != kNoVertex; x = lpar_[static_cast<std::size_t>(x)]) branch_a.push_back(nd.vertices[static_cast<std::size_t>(x)]);
  for (Vertex x = ed.v; x != top; x = lpar_[static_cast<std::size_t>(x)]) branch_b.push_back(nd.vertices[static_cast<std::size_t>(x)]);
  std::reverse(branch_a.begin(), branch_a.end());
  std::reverse(branch_b.begin(), branch_b.end());

  for (Vertex x : sep) {
    Vertex gx = nd.vertices[static_cast<std::size_t>(x)];
    nd.separator.push_back(gx);
    sep_flag_[static_cast<std::size_t>(gx)] = 1;
  }
  add_pieces(id, branch_a);
  add_pieces(id, branch_b);

  std::vector<char> in_a(nd.vertices.size(), 0);
  std::vector<char> in_sep(nd.vertices.size(), 0);
  for (Vertex x : side_a) in_a[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : sep) in_sep[static_cast<std::size_t>(x)] = 1;
  std::vector<Vertex> first, second;
  for (std::size_t x = 0; x < nd.vertices.size(); ++x) {
    if (in_sep[x] || in_a[x]) first.push_back(static_cast<Vertex>(x));
    if (in_sep[x] || !in_a[x]) second.push_back(static_cast<Vertex>(x));
  }
  int c0 = make_child(id, first);
  int c1 = make_child(id, second);
  tree_.nodes_[static_cast<std::size_t>(id)].children = {c0, c1};
}

void DecompositionBuilder::finish() {
  for (auto& nd : tree_.nodes_) {
    if (!nd.leaf()) continue;
    for (Vertex v : nd.vertices) {
      if (tree_.is_virtual(v) || tree_.leaf_of_[static_cast<std::size_t>(v)] >= 0) continue;
      tree_.leaf_of_[static_cast<std::size_t>(v)] = nd.id;
      nd.owned.push_back(v);
    }
  }
  std::size_t m = tree_.nodes_.size();
  tree_.enter_.assign(m, 0);
  tree_.exit_.assign(m, 0);
  int clock = 0;
  std::vector<std::pair<int, bool>> st{{0, false}};
  while (!st.empty()) {
    auto [id, done] = st.back();
    st.pop_back();
    if (done) {
      tree_.exit_[static_cast<std::size_t>(id)] = clock++;
      continue;
    }
    tree_.enter_[static_cast<std::size_t>(id)] = clock++;
    st.emplace_back(id, true);
    const auto& nd = tree_.nodes_[static_cast<std::size_t>(id)];
    if (!nd.leaf()) {
      st.emplace_back(nd.children[1], false);
      st.emplace_back(nd.children[0], false);
    }
  }
}

DecompositionTree DecompositionBuilder::build() {
  if (n_ == 0) throw std::invalid_argument("cannot decompose an empty graph");
  make_root();
  for (std::size_t id = 0; id < tree_.nodes_.size(); ++id) process(static_cast<int>(id));
  finish();
  return std::move(tree_);
}

DecompositionTree decompose(const LabeledGraph& g, const Embedding& emb, const DecompositionOptions& opts) {
  return DecompositionBuilder(g, emb, opts).build();
}

}  // namespace vlo
