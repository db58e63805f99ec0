#include "vlo/indexed_minima.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace vlo {

// ---------------------------------------------------------------------------
// PredecessorSet

void PredecessorSet::check_key(std::uint32_t key) const {
  if (key < 1 || key > universe_)
    throw std::out_of_range("key " + std::to_string(key) + " outside [1, " + std::to_string(universe_) + "]");
}

bool PredecessorSet::contains(std::uint32_t key) const {
  if (key < 1 || key > universe_) return false;
  if (!dense()) return std::binary_search(small_.begin(), small_.end(), key);
  return (levels_[0][key >> 6] >> (key & 63)) & 1u;
}

bool PredecessorSet::insert(std::uint32_t key) {
  check_key(key);
  if (!dense()) {
    auto it = std::lower_bound(small_.begin(), small_.end(), key);
    if (it != small_.end() && *it == key) return false;
    small_.insert(it, key);
    ++size_;
    if (size_ > kDenseAbove) to_dense();
    return true;
  }
  if (contains(key)) return false;
  set_bit(key);
  ++size_;
  return true;
}

void PredecessorSet::erase(std::uint32_t key) {
  if (!contains(key)) throw std::logic_error("erase of absent key " + std::to_string(key));
  --size_;
  if (!dense()) {
    small_.erase(std::lower_bound(small_.begin(), small_.end(), key));
    return;
  }
  clear_bit(key);
  if (size_ < kSparseBelow) to_sparse();
}

std::optional<std::uint32_t> PredecessorSet::min() const {
  if (size_ == 0) return std::nullopt;
  if (!dense()) return small_.front();
  std::size_t idx = 0;
  for (std::size_t l = levels_.size(); l-- > 0;) {
    idx = idx * 64 + static_cast<std::size_t>(std::countr_zero(levels_[l][idx]));
  }
  return static_cast<std::uint32_t>(idx);
}

std::optional<std::uint32_t> PredecessorSet::successor(std::uint32_t key) const {
  if (size_ == 0 || key > universe_) return std::nullopt;
  if (key < 1) key = 1;
  if (!dense()) {
    auto it = std::lower_bound(small_.begin(), small_.end(), key);
    if (it == small_.end()) return std::nullopt;
    return *it;
  }
  // Climb until a word has a set bit at or after the position, then descend.
  std::size_t pos = key;
  std::size_t level = 0;
  for (;;) {
    if (level == levels_.size()) return std::nullopt;
    const auto& words = levels_[level];
    std::size_t w = pos >> 6;
    if (w < words.size()) {
      std::uint64_t masked = words[w] & (~std::uint64_t{0} << (pos & 63));
      if (masked != 0) {
        pos = w * 64 + static_cast<std::size_t>(std::countr_zero(masked));
        break;
      }
    }
    pos = w + 1;
    ++level;
    if (level < levels_.size() && (pos >> 6) >= levels_[level].size()) return std::nullopt;
  }
  while (level-- > 0) pos = pos * 64 + static_cast<std::size_t>(std::countr_zero(levels_[level][pos]));
  return static_cast<std::uint32_t>(pos);
}

void PredecessorSet::set_bit(std::uint32_t key) {
  std::size_t pos = key;
  for (auto& words : levels_) {
    bool was_zero = words[pos >> 6] == 0;
    words[pos >> 6] |= std::uint64_t{1} << (pos & 63);
    if (!was_zero) return;
    pos >>= 6;
  }
}

void PredecessorSet::clear_bit(std::uint32_t key) {
  std::size_t pos = key;
  for (auto& words : levels_) {
    words[pos >> 6] &= ~(std::uint64_t{1} << (pos & 63));
    if (words[pos >> 6] != 0) return;
    pos >>= 6;
  }
}

void PredecessorSet::to_dense() {
  std::size_t bits = static_cast<std::size_t>(universe_) + 1;
  levels_.clear();
  do {
    std::size_t words = (bits + 63) / 64;
    levels_.emplace_back(words, 0);
    bits = words;
  } while (bits > 1);
  for (std::uint32_t k : small_) set_bit(k);
  small_.clear();
  small_.shrink_to_fit();
}

void PredecessorSet::to_sparse() {
  small_.clear();
  for (auto k = successor(1); k; k = successor(*k + 1)) small_.push_back(*k);
  levels_.clear();
}

// ---------------------------------------------------------------------------
// PrefixMinIndex

void PrefixMinIndex::check_slot(std::uint32_t slot) const {
  if (slot < 1 || slot > slots_)
    throw std::out_of_range("slot " + std::to_string(slot) + " outside [1, " + std::to_string(slots_) + "]");
}

bool PrefixMinIndex::better(std::int32_t a, std::int32_t b) const {
  if (b < 0) return a >= 0;
  if (a < 0) return false;
  const Node& x = pool_[static_cast<std::size_t>(a)];
  const Node& y = pool_[static_cast<std::size_t>(b)];
  return x.value < y.value || (x.value == y.value && x.slot < y.slot);
}

void PrefixMinIndex::pull(std::int32_t t) {
  Node& n = pool_[static_cast<std::size_t>(t)];
  std::int32_t best = t;
  if (n.left >= 0 && better(pool_[static_cast<std::size_t>(n.left)].best, best))
    best = pool_[static_cast<std::size_t>(n.left)].best;
  if (n.right >= 0 && better(pool_[static_cast<std::size_t>(n.right)].best, best))
    best = pool_[static_cast<std::size_t>(n.right)].best;
  n.best = best;
}

std::int32_t PrefixMinIndex::merge(std::int32_t a, std::int32_t b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (pool_[static_cast<std::size_t>(a)].priority > pool_[static_cast<std::size_t>(b)].priority) {
    pool_[static_cast<std::size_t>(a)].right = merge(pool_[static_cast<std::size_t>(a)].right, b);
    pull(a);
    return a;
  }
  pool_[static_cast<std::size_t>(b)].left = merge(a, pool_[static_cast<std::size_t>(b)].left);
  pull(b);
  return b;
}

void PrefixMinIndex::split(std::int32_t t, std::uint32_t key, std::int32_t& lo, std::int32_t& hi) {
  if (t < 0) {
    lo = hi = -1;
    return;
  }
  Node& n = pool_[static_cast<std::size_t>(t)];
  if (n.slot < key) {
    std::int32_t r = n.right;
    split(r, key, pool_[static_cast<std::size_t>(t)].right, hi);
    lo = t;
  } else {
    std::int32_t l = n.left;
    split(l, key, lo, pool_[static_cast<std::size_t>(t)].left);
    hi = t;
  }
  pull(t);
}

std::int32_t PrefixMinIndex::find(std::uint32_t slot) const {
  std::int32_t t = root_;
  while (t >= 0) {
    const Node& n = pool_[static_cast<std::size_t>(t)];
    if (n.slot == slot) return t;
    t = slot < n.slot ? n.left : n.right;
  }
  return -1;
}

std::int32_t PrefixMinIndex::allocate(std::uint32_t slot, Length value) {
  rng_ ^= rng_ << 13;
  rng_ ^= rng_ >> 17;
  rng_ ^= rng_ << 5;
  Node n{slot, value, rng_};
  std::int32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    pool_[static_cast<std::size_t>(id)] = n;
  } else {
    id = static_cast<std::int32_t>(pool_.size());
    pool_.push_back(n);
  }
  pool_[static_cast<std::size_t>(id)].best = id;
  return id;
}

void PrefixMinIndex::insert(std::uint32_t slot, Length value) {
  check_slot(slot);
  if (find(slot) >= 0) throw std::logic_error("slot " + std::to_string(slot) + " already occupied");
  std::int32_t node = allocate(slot, value);
  std::int32_t lo, hi;
  split(root_, slot, lo, hi);
  root_ = merge(merge(lo, node), hi);
  ++size_;
}

void PrefixMinIndex::erase(std::uint32_t slot) {
  check_slot(slot);
  std::int32_t lo, mid, hi;
  split(root_, slot, lo, mid);
  split(mid, slot + 1, mid, hi);
  if (mid < 0) {
    root_ = merge(lo, hi);
    throw std::logic_error("slot " + std::to_string(slot) + " is empty");
  }
  free_.push_back(mid);
  root_ = merge(lo, hi);
  --size_;
}

std::optional<Length> PrefixMinIndex::value_at(std::uint32_t slot) const {
  std::int32_t t = find(slot);
  if (t < 0) return std::nullopt;
  return pool_[static_cast<std::size_t>(t)].value;
}

std::optional<SlotValue> PrefixMinIndex::prefix_min(std::uint32_t l) const {
  std::int32_t best = -1;
  std::int32_t t = root_;
  while (t >= 0) {
    const Node& n = pool_[static_cast<std::size_t>(t)];
    if (n.slot <= l) {
      if (n.left >= 0 && better(pool_[static_cast<std::size_t>(n.left)].best, best))
        best = pool_[static_cast<std::size_t>(n.left)].best;
      if (better(t, best)) best = t;
      t = n.right;
    } else {
      t = n.left;
    }
  }
  if (best < 0) return std::nullopt;
  return SlotValue{pool_[static_cast<std::size_t>(best)].slot, pool_[static_cast<std::size_t>(best)].value};
}

std::optional<SlotValue> PrefixMinIndex::suffix_min(std::uint32_t l) const {
  std::int32_t best = -1;
  std::int32_t t = root_;
  while (t >= 0) {
    const Node& n = pool_[static_cast<std::size_t>(t)];
    if (n.slot >= l) {
      if (n.right >= 0 && better(pool_[static_cast<std::size_t>(n.right)].best, best))
        best = pool_[static_cast<std::size_t>(n.right)].best;
      if (better(t, best)) best = t;
      t = n.left;
    } else {
      t = n.right;
    }
  }
  if (best < 0) return std::nullopt;
  return SlotValue{pool_[static_cast<std::size_t>(best)].slot, pool_[static_cast<std::size_t>(best)].value};
}

}  // namespace vlo
