#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace sstit {

// Agents, states, actions and propositions are interned as dense 0-based ids.
// The CLI surface is 1-based for agents (as in the file formats); conversion
// happens at parse/print time only.
using AgentId = int;
using StateId = int;
using ActionId = int;
using PropId = int;

inline constexpr int kMaxIds = 64;

/// Small set of interned ids, backed by one 64-bit word.
class IdSet {
public:
  constexpr IdSet() = default;
  static constexpr IdSet single(int id) { return IdSet{}.with(id); }
  static constexpr IdSet range(int n) {
    IdSet s;
    s.bits_ = n >= 64 ? ~0ull : (1ull << n) - 1;
    return s;
  }
  static constexpr IdSet from_bits(std::uint64_t b) {
    IdSet s;
    s.bits_ = b;
    return s;
  }

  constexpr bool contains(int id) const { return (bits_ >> id) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  void add(int id) {
    if (id < 0 || id >= kMaxIds) throw std::out_of_range("IdSet: id out of range");
    bits_ |= 1ull << id;
  }
  void remove(int id) { bits_ &= ~(1ull << id); }
  constexpr IdSet with(int id) const {
    IdSet s = *this;
    s.bits_ |= 1ull << id;
    return s;
  }

  constexpr bool subset_of(IdSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr IdSet operator&(IdSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr IdSet operator|(IdSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr IdSet minus(IdSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr bool intersects(IdSet o) const { return (bits_ & o.bits_) != 0; }

  int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  friend constexpr bool operator==(IdSet a, IdSet b) = default;
  friend constexpr auto operator<=>(IdSet a, IdSet b) { return a.bits_ <=> b.bits_; }

  // Ascending iteration over member ids.
  class iterator {
  public:
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

  private:
    std::uint64_t rest_;
  };
  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

private:
  std::uint64_t bits_ = 0;
};

using AgentSet = IdSet;
using StateSet = IdSet;
using ActionSet = IdSet;
using PropSet = IdSet;

}  // namespace sstit
