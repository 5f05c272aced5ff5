#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace phiset {

using Bits = std::uint64_t;

inline constexpr std::size_t kMaxUniverse = 64;

constexpr Bits full_bits(std::size_t universe) {
  return universe >= 64 ? ~Bits{0} : (Bits{1} << universe) - 1;
}

/// A subset of the universe {0, ..., universe_size-1}, stored as a bit word.
///
/// Binary operations require both operands to live in the same universe and
/// throw InputError otherwise. Equality is bitwise; the canonical order used
/// throughout the engine is (cardinality, numeric bit value).
class SubsetMask {
 public:
  SubsetMask() = default;
  SubsetMask(std::size_t universe, Bits bits);

  static SubsetMask empty(std::size_t universe) { return {universe, 0}; }
  static SubsetMask full(std::size_t universe) { return {universe, full_bits(universe)}; }
  static SubsetMask singleton(std::size_t universe, std::size_t point);
  static SubsetMask of(std::size_t universe, std::initializer_list<std::size_t> points);
  static SubsetMask of(std::size_t universe, std::span<const std::size_t> points);

  std::size_t universe_size() const { return universe_; }
  Bits bits() const { return bits_; }

  bool contains(std::size_t point) const { return point < universe_ && ((bits_ >> point) & 1U); }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_bits(universe_); }

  bool subset_of(const SubsetMask& other) const;
  bool disjoint_from(const SubsetMask& other) const;

  SubsetMask complement() const { return {universe_, full_bits(universe_) & ~bits_, Raw{}}; }
  SubsetMask operator&(const SubsetMask& o) const;
  SubsetMask operator|(const SubsetMask& o) const;
  SubsetMask operator-(const SubsetMask& o) const;  // set difference

  /// Member points in increasing order.
  std::vector<std::size_t> points() const;

  /// "{0,2}" style rendering.
  std::string to_string() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  struct Raw {};
  SubsetMask(std::size_t universe, Bits bits, Raw) : universe_(universe), bits_(bits) {}
  void require_same_universe(const SubsetMask& o) const;

  std::size_t universe_ = 0;
  Bits bits_ = 0;
};

/// Canonical order: cardinality first, then numeric bit value.
constexpr bool canonical_less(Bits a, Bits b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  return ca != cb ? ca < cb : a < b;
}

struct CanonicalLess {
  bool operator()(const SubsetMask& a, const SubsetMask& b) const {
    if (a.universe_size() != b.universe_size()) return a.universe_size() < b.universe_size();
    return canonical_less(a.bits(), b.bits());
  }
};

/// A partition of a universe into nonempty, pairwise disjoint blocks, ordered
/// by least element.
class Partition {
 public:
  Partition() = default;
  Partition(std::size_t universe, std::vector<SubsetMask> blocks);

  std::size_t universe_size() const { return universe_; }
  const std::vector<SubsetMask>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  /// Index of the block containing `point`.
  std::size_t block_of(std::size_t point) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<SubsetMask> blocks_;
};

}  // namespace phiset
