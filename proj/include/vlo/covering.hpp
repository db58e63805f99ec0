#pragma once

#include <span>
#include <vector>

#include "vlo/types.hpp"

namespace vlo {

// Positions index the vertices of a separator path q_0 .. q_k. `h` holds the
// prefix distances along the path, so the on-path distance from q_a to q_b
// (a <= b) is h[b] - h[a].

struct Connection {
  std::uint32_t pos;
  Length length;

  friend bool operator==(const Connection&, const Connection&) = default;
};

// Sorted by position.
using ConnectionSet = std::vector<Connection>;

enum class CoverMode : std::uint8_t {
  // Entries (q, l) with l >= delta(S, q) cover t at or after q:
  // l + h(t) - h(q) <= delta(S, t) + eps * alpha.
  kFromSource,
  // Entries (q, l) with l >= delta(q, S) cover t at or before q:
  // h(q) - h(t) + l <= delta(t, S) + eps * alpha.
  kIntoSource,
};

// Largest size a covering set may reach: ceil(2 / eps).
std::size_t additive_size_bound(Rational eps);

// Greedy sweep over the path in covering direction. A position t with
// dist[t] <= alpha that no earlier entry covers within eps * alpha becomes an
// entry with length dist[t]. Every entry therefore has length <= alpha.
ConnectionSet select_connections_additive(std::span<const Length> dist, std::span<const Length> h, Length alpha,
                                          Rational eps, CoverMode mode = CoverMode::kFromSource);

// The reduced path over the union of entry positions, its propagated
// distances, and a re-selection with slack eps. `undirected` relaxes the
// reduced path in both directions.
struct ReducedPath {
  std::vector<std::uint32_t> positions;  // sorted, distinct
  std::vector<Length> dist;              // propagated, parallel to positions
};

ReducedPath reduce_path(std::span<const ConnectionSet* const> sets, std::span<const Length> h, CoverMode mode,
                        bool undirected);

ConnectionSet thin(std::span<const ConnectionSet* const> sets, std::span<const Length> h, Length alpha,
                   Rational eps, CoverMode mode = CoverMode::kFromSource, bool undirected = false);
ConnectionSet thin(const std::vector<ConnectionSet>& sets, std::span<const Length> h, Length alpha, Rational eps,
                   CoverMode mode = CoverMode::kFromSource, bool undirected = false);

// Multiplicative portals for an undirected path: for every t some portal q has
// dist[q] + |h(t) - h(q)| <= (1 + eps) * dist[t]. The sweep starts at the
// nearest position and walks outward in both directions; each side adds fewer
// than 2 / eps portals, so the size is at most kPortalConstant * ceil(1/eps) - 1.
inline constexpr std::size_t kPortalConstant = 4;
std::vector<std::uint32_t> select_portals(std::span<const Length> dist, std::span<const Length> h, Rational eps);
std::size_t portal_size_bound(Rational eps);

}  // namespace vlo
