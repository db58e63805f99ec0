#include "vlo/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vlo {

Embedding Embedding::from_coordinates(const LabeledGraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<Dart>> rot(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(static_cast<EdgeId>(e));
    if (ed.u == ed.v) throw std::invalid_argument("self loop cannot be embedded");
    rot[static_cast<std::size_t>(ed.u)].push_back(make_dart(static_cast<EdgeId>(e), false));
    rot[static_cast<std::size_t>(ed.v)].push_back(make_dart(static_cast<EdgeId>(e), true));
  }
  for (std::size_t v = 0; v < n; ++v) {
    Point p = g.position(static_cast<Vertex>(v));
    auto angle = [&](Dart d) {
      Point q = g.position(dart_head(g, d));
      return std::atan2(q.y - p.y, q.x - p.x);
    };
    std::sort(rot[v].begin(), rot[v].end(), [&](Dart a, Dart b) {
      double x = angle(a);
      double y = angle(b);
      if (x != y) return x < y;
      return a < b;
    });
  }
  return from_rotation(std::move(rot), g.edge_count());
}

Embedding Embedding::from_rotation(std::vector<std::vector<Dart>> rotation, std::size_t edge_count) {
  Embedding emb;
  emb.rotation_ = std::move(rotation);
  emb.tail_.assign(2 * edge_count, kNoVertex);
  emb.pos_.assign(2 * edge_count, -1);
  for (std::size_t v = 0; v < emb.rotation_.size(); ++v) {
    for (std::size_t i = 0; i < emb.rotation_[v].size(); ++i) {
      Dart d = emb.rotation_[v][i];
      if (emb.tail_[static_cast<std::size_t>(d)] != kNoVertex) throw std::invalid_argument("dart listed twice");
      emb.tail_[static_cast<std::size_t>(d)] = static_cast<Vertex>(v);
      emb.pos_[static_cast<std::size_t>(d)] = static_cast<int>(i);
    }
  }
  for (Vertex t : emb.tail_)
    if (t == kNoVertex) throw std::invalid_argument("dart missing from rotation system");
  return emb;
}

Dart Embedding::rot_next(Dart d) const {
  const auto& r = rotation_[static_cast<std::size_t>(tail(d))];
  std::size_t i = static_cast<std::size_t>(pos_[static_cast<std::size_t>(d)]) + 1;
  return r[i == r.size() ? 0 : i];
}

Dart Embedding::rot_prev(Dart d) const {
  const auto& r = rotation_[static_cast<std::size_t>(tail(d))];
  std::size_t i = static_cast<std::size_t>(pos_[static_cast<std::size_t>(d)]);
  return r[i == 0 ? r.size() - 1 : i - 1];
}

std::vector<std::vector<Dart>> Embedding::faces() const {
  std::vector<std::vector<Dart>> out;
  std::vector<char> seen(dart_count(), 0);
  for (std::size_t s = 0; s < dart_count(); ++s) {
    if (seen[s]) continue;
    std::vector<Dart> face;
    Dart d = static_cast<Dart>(s);
    while (!seen[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = 1;
      face.push_back(d);
      d = face_next(d);
    }
    out.push_back(std::move(face));
  }
  return out;
}

std::vector<int> Embedding::face_of_darts() const {
  std::vector<int> id(dart_count(), -1);
  int f = 0;
  for (std::size_t s = 0; s < dart_count(); ++s) {
    if (id[s] >= 0) continue;
    Dart d = static_cast<Dart>(s);
    while (id[static_cast<std::size_t>(d)] < 0) {
      id[static_cast<std::size_t>(d)] = f;
      d = face_next(d);
    }
    ++f;
  }
  return id;
}

Vertex Embedding::add_vertex() {
  rotation_.emplace_back();
  return static_cast<Vertex>(rotation_.size() - 1);
}

void Embedding::grow_darts(std::size_t count) {
  if (tail_.size() < count) {
    tail_.resize(count, kNoVertex);
    pos_.resize(count, -1);
  }
}

void Embedding::reindex(Vertex v) {
  const auto& r = rotation_[static_cast<std::size_t>(v)];
  for (std::size_t i = 0; i < r.size(); ++i) pos_[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
}

void Embedding::insert_edge(Dart d, Vertex tail_of_d, Dart after, Dart before) {
  grow_darts(static_cast<std::size_t>(std::max(d, twin(d))) + 1);
  Vertex head_of_d = tail(before);
  tail_[static_cast<std::size_t>(d)] = tail_of_d;
  tail_[static_cast<std::size_t>(twin(d))] = head_of_d;

  auto& ra = rotation_[static_cast<std::size_t>(tail_of_d)];
  ra.insert(ra.begin() + pos_[static_cast<std::size_t>(after)] + 1, d);
  reindex(tail_of_d);
  auto& rb = rotation_[static_cast<std::size_t>(head_of_d)];
  rb.insert(rb.begin() + pos_[static_cast<std::size_t>(before)], twin(d));
  reindex(head_of_d);
}

void Embedding::append_edge(Dart d, Vertex tail_of_d) {
  grow_darts(static_cast<std::size_t>(std::max(d, twin(d))) + 1);
  tail_[static_cast<std::size_t>(d)] = tail_of_d;
  rotation_[static_cast<std::size_t>(tail_of_d)].push_back(d);
  pos_[static_cast<std::size_t>(d)] = static_cast<int>(rotation_[static_cast<std::size_t>(tail_of_d)].size() - 1);
}

Dart Embedding::outer_dart(const LabeledGraph& g, const Embedding& emb) {
  Vertex best = kNoVertex;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (emb.rotation(static_cast<Vertex>(v)).empty()) continue;
    Point p = g.position(static_cast<Vertex>(v));
    if (best == kNoVertex) {
      best = static_cast<Vertex>(v);
      continue;
    }
    Point b = g.position(best);
    if (p.x < b.x || (p.x == b.x && p.y < b.y)) best = static_cast<Vertex>(v);
  }
  if (best == kNoVertex) return kNoDart;
  // Rotation is sorted by angle, so the last dart has the largest angle.
  return emb.rotation(best).back();
}

bool Embedding::euler_consistent() const {
  std::size_t n = rotation_.size();
  std::vector<int> comp(n, -1);
  int components = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> stack{static_cast<Vertex>(s)};
    comp[s] = components;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Dart d : rotation(x)) {
        Vertex y = head(d);
        if (comp[static_cast<std::size_t>(y)] < 0) {
          comp[static_cast<std::size_t>(y)] = components;
          stack.push_back(y);
        }
      }
    }
    ++components;
  }
  long long v = static_cast<long long>(n);
  long long e = static_cast<long long>(dart_count() / 2);
  long long f = static_cast<long long>(faces().size());
  // Isolated vertices have no faces of their own.
  long long isolated = 0;
  for (std::size_t x = 0; x < n; ++x)
    if (rotation_[x].empty()) ++isolated;
  return v - e + f + isolated == 1 + components;
}

namespace {

bool adjacent(const Embedding& emb, Vertex a, Vertex b) {
  for (Dart d : emb.rotation(a))
    if (emb.head(d) == b) return true;
  return false;
}

}  // namespace

std::size_t triangulate_faces(LabeledGraph& g, Embedding& emb, Length infinite_length, Dart keep_face) {
  std::vector<std::vector<Dart>> faces = emb.faces();
  int skip = -1;
  if (keep_face != kNoDart) {
    for (std::size_t f = 0; f < faces.size() && skip < 0; ++f)
      for (Dart d : faces[f])
        if (d == keep_face) skip = static_cast<int>(f);
  }
  std::size_t added = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (static_cast<int>(f) == skip) continue;
    std::vector<Dart> walk = std::move(faces[f]);
    while (walk.size() > 3) {
      std::size_t k = walk.size();
      std::size_t pick = k;
      std::size_t fallback = k;
      for (std::size_t i = 0; i < k; ++i) {
        Dart in = walk[(i + k - 1) % k];
        Dart out = walk[i];
        Vertex a = emb.tail(in);
        Vertex b = emb.head(out);
        if (a == b) continue;
        if (fallback == k) fallback = i;
        if (!adjacent(emb, a, b)) {
          pick = i;
          break;
        }
      }
      if (pick == k) pick = fallback;
      if (pick == k) throw std::runtime_error("face cannot be triangulated");
      Dart in = walk[(pick + k - 1) % k];
      Dart out = walk[pick];
      Vertex a = emb.tail(in);
      Vertex b = emb.head(out);
      EdgeId e = g.add_edge_pair(a, b, infinite_length, infinite_length, EdgeRole::kTriangulation);
      Dart c = make_dart(e, false);
      emb.insert_edge(c, a, in, twin(out));
      ++added;
      // Replace in, out by c in the remaining walk.
      std::size_t ii = (pick + k - 1) % k;
      walk[ii] = c;
      walk.erase(walk.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  return added;
}

LabeledGraph triangulate(const LabeledGraph& g) {
  LabeledGraph out = g;
  Embedding emb = Embedding::from_coordinates(out);
  Dart outer = Embedding::outer_dart(out, emb);
  triangulate_faces(out, emb, g.infinite_length(), outer);
  return out;
}

}  // namespace vlo
