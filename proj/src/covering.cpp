#include "vlo/covering.hpp"

#include <algorithm>
#include <stdexcept>

namespace vlo {

namespace {

Length h_at(std::span<const Length> h, std::uint32_t pos) {
  if (pos >= h.size()) throw std::out_of_range("path position outside prefix array");
  return h[pos];
}

// Positions must be ascending; dist is parallel to positions.
ConnectionSet select_core(std::span<const std::uint32_t> positions, std::span<const Length> dist,
                          std::span<const Length> h, Length alpha, Rational eps, CoverMode mode) {
  ConnectionSet out;
  Length best = kInfinity;
  auto consider = [&](std::size_t k) {
    Length d = dist[k];
    if (!finite(d) || d > alpha) return;
    Length hk = h_at(h, positions[k]);
    if (mode == CoverMode::kFromSource) {
      if (finite(best) && within_additive(best + hk, d, eps, alpha)) return;
      out.push_back({positions[k], d});
      best = std::min(best, d - hk);
    } else {
      if (finite(best) && within_additive(best - hk, d, eps, alpha)) return;
      out.push_back({positions[k], d});
      best = std::min(best, d + hk);
    }
  };
  if (mode == CoverMode::kFromSource) {
    for (std::size_t k = 0; k < positions.size(); ++k) consider(k);
  } else {
    for (std::size_t k = positions.size(); k-- > 0;) consider(k);
    std::reverse(out.begin(), out.end());
  }
  return out;
}

}  // namespace

std::size_t additive_size_bound(Rational eps) {
  // ceil(2 / eps) = ceil(2 * den / num)
  return static_cast<std::size_t>((2 * eps.den + eps.num - 1) / eps.num);
}

ConnectionSet select_connections_additive(std::span<const Length> dist, std::span<const Length> h, Length alpha,
                                          Rational eps, CoverMode mode) {
  if (dist.size() != h.size()) throw std::invalid_argument("distance and prefix arrays differ in length");
  std::vector<std::uint32_t> positions(dist.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = static_cast<std::uint32_t>(i);
  return select_core(positions, dist, h, alpha, eps, mode);
}

ReducedPath reduce_path(std::span<const ConnectionSet* const> sets, std::span<const Length> h, CoverMode mode,
                        bool undirected) {
  ReducedPath r;
  if (h.empty()) return r;
  bool any = false;
  for (const ConnectionSet* s : sets) {
    for (const Connection& c : *s) {
      r.positions.push_back(c.pos);
      any = true;
    }
  }
  if (!any) return r;
  r.positions.push_back(mode == CoverMode::kFromSource ? 0u : static_cast<std::uint32_t>(h.size() - 1));
  std::sort(r.positions.begin(), r.positions.end());
  r.positions.erase(std::unique(r.positions.begin(), r.positions.end()), r.positions.end());
  r.dist.assign(r.positions.size(), kInfinity);
  for (const ConnectionSet* s : sets) {
    for (const Connection& c : *s) {
      auto it = std::lower_bound(r.positions.begin(), r.positions.end(), c.pos);
      std::size_t k = static_cast<std::size_t>(it - r.positions.begin());
      r.dist[k] = std::min(r.dist[k], c.length);
    }
  }
  auto forward = [&] {
    for (std::size_t k = 1; k < r.positions.size(); ++k)
      r.dist[k] = std::min(r.dist[k], sat_add(r.dist[k - 1], h_at(h, r.positions[k]) - h_at(h, r.positions[k - 1])));
  };
  auto backward = [&] {
    for (std::size_t k = r.positions.size() - 1; k-- > 0;)
      r.dist[k] = std::min(r.dist[k], sat_add(r.dist[k + 1], h_at(h, r.positions[k + 1]) - h_at(h, r.positions[k])));
  };
  if (mode == CoverMode::kFromSource || undirected) forward();
  if (mode == CoverMode::kIntoSource || undirected) backward();
  if (undirected && mode == CoverMode::kIntoSource) forward();
  return r;
}

ConnectionSet thin(std::span<const ConnectionSet* const> sets, std::span<const Length> h, Length alpha, Rational eps,
                   CoverMode mode, bool undirected) {
  ReducedPath r = reduce_path(sets, h, mode, undirected);
  return select_core(r.positions, r.dist, h, alpha, eps, mode);
}

ConnectionSet thin(const std::vector<ConnectionSet>& sets, std::span<const Length> h, Length alpha, Rational eps,
                   CoverMode mode, bool undirected) {
  std::vector<const ConnectionSet*> ptrs;
  ptrs.reserve(sets.size());
  for (const auto& s : sets) ptrs.push_back(&s);
  return thin(ptrs, h, alpha, eps, mode, undirected);
}

std::size_t portal_size_bound(Rational eps) {
  return kPortalConstant * static_cast<std::size_t>(eps.ceil_inverse()) - 1;
}

std::vector<std::uint32_t> select_portals(std::span<const Length> dist, std::span<const Length> h, Rational eps) {
  if (dist.size() != h.size()) throw std::invalid_argument("distance and prefix arrays differ in length");
  std::vector<std::uint32_t> out;
  std::size_t star = dist.size();
  for (std::size_t j = 0; j < dist.size(); ++j)
    if (finite(dist[j]) && (star == dist.size() || dist[j] < dist[star])) star = j;
  if (star == dist.size()) return out;

  std::vector<std::uint32_t> left;
  Length best = dist[star] + h[star];
  for (std::size_t j = star; j-- > 0;) {
    if (within_stretch(best - h[j], dist[j], eps)) continue;
    left.push_back(static_cast<std::uint32_t>(j));
    best = std::min(best, dist[j] + h[j]);
  }
  out.assign(left.rbegin(), left.rend());
  out.push_back(static_cast<std::uint32_t>(star));
  best = dist[star] - h[star];
  for (std::size_t j = star + 1; j < dist.size(); ++j) {
    if (within_stretch(best + h[j], dist[j], eps)) continue;
    out.push_back(static_cast<std::uint32_t>(j));
    best = std::min(best, dist[j] - h[j]);
  }
  return out;
}

}  // namespace vlo
