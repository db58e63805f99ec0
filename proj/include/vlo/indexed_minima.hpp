#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vlo/types.hpp"

namespace vlo {

// Integer set over [1, U] with minimum and successor queries. Small sets are a
// sorted vector; large ones switch to a 64-ary bitmap tree.
class PredecessorSet {
 public:
  explicit PredecessorSet(std::uint32_t universe = 0) : universe_(universe) {}

  std::uint32_t universe() const { return universe_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Returns false if the key was already present.
  bool insert(std::uint32_t key);
  // Throws std::logic_error if the key is absent.
  void erase(std::uint32_t key);
  bool contains(std::uint32_t key) const;
  std::optional<std::uint32_t> min() const;
  // Smallest member >= key.
  std::optional<std::uint32_t> successor(std::uint32_t key) const;

 private:
  static constexpr std::size_t kDenseAbove = 64;
  static constexpr std::size_t kSparseBelow = 32;

  bool dense() const { return !levels_.empty(); }
  void check_key(std::uint32_t key) const;
  void to_dense();
  void to_sparse();
  void set_bit(std::uint32_t key);
  void clear_bit(std::uint32_t key);

  std::uint32_t universe_;
  std::size_t size_ = 0;
  std::vector<std::uint32_t> small_;
  // levels_[0] holds one bit per key; each higher level has one bit per
  // nonzero word of the level below.
  std::vector<std::vector<std::uint64_t>> levels_;
};

struct SlotValue {
  std::uint32_t slot;
  Length value;

  friend bool operator==(const SlotValue&, const SlotValue&) = default;
};

// Occupied slots in [1, n], each with a value. Prefix and suffix minimum
// queries return the smallest value with ties to the smaller slot.
// Treap keyed by slot, augmented with the subtree minimum.
class PrefixMinIndex {
 public:
  explicit PrefixMinIndex(std::uint32_t slots = 0) : slots_(slots) {}

  std::uint32_t slot_count() const { return slots_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Throws std::logic_error if the slot is occupied.
  void insert(std::uint32_t slot, Length value);
  // Throws std::logic_error if the slot is empty.
  void erase(std::uint32_t slot);
  std::optional<Length> value_at(std::uint32_t slot) const;

  // Minimum over occupied slots <= l.
  std::optional<SlotValue> prefix_min(std::uint32_t l) const;
  // Minimum over occupied slots >= l.
  std::optional<SlotValue> suffix_min(std::uint32_t l) const;

 private:
  struct Node {
    std::uint32_t slot;
    Length value;
    std::uint32_t priority;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t best = -1;  // node holding the subtree minimum
  };

  bool better(std::int32_t a, std::int32_t b) const;
  void pull(std::int32_t t);
  std::int32_t merge(std::int32_t a, std::int32_t b);
  // Splits into slots < key and slots >= key.
  void split(std::int32_t t, std::uint32_t key, std::int32_t& lo, std::int32_t& hi);
  std::int32_t find(std::uint32_t slot) const;
  std::int32_t allocate(std::uint32_t slot, Length value);
  void check_slot(std::uint32_t slot) const;

  std::uint32_t slots_;
  std::size_t size_ = 0;
  std::int32_t root_ = -1;
  std::vector<Node> pool_;
  std::vector<std::int32_t> free_;
  std::uint32_t rng_ = 0x9e3779b9u;
};

}  // namespace vlo
