#include "phiset/subset_mask.hpp"

#include <algorithm>

#include "phiset/errors.hpp"

namespace phiset {

SubsetMask::SubsetMask(std::size_t universe, Bits bits) : universe_(universe), bits_(bits) {
  if (universe > kMaxUniverse) {
    throw InputError("universe of " + std::to_string(universe) + " points exceeds " +
                     std::to_string(kMaxUniverse));
  }
  if ((bits & ~full_bits(universe)) != 0) {
    throw InputError("subset has a point outside a universe of size " + std::to_string(universe));
  }
}

SubsetMask SubsetMask::singleton(std::size_t universe, std::size_t point) {
  if (point >= universe) {
    throw InputError("point " + std::to_string(point) + " outside universe of size " +
                     std::to_string(universe));
  }
  return {universe, Bits{1} << point};
}

SubsetMask SubsetMask::of(std::size_t universe, std::initializer_list<std::size_t> points) {
  return of(universe, std::span<const std::size_t>(points.begin(), points.size()));
}

SubsetMask SubsetMask::of(std::size_t universe, std::span<const std::size_t> points) {
  Bits bits = 0;
  for (std::size_t p : points) {
    if (p >= universe) {
      throw InputError("point " + std::to_string(p) + " outside universe of size " +
                       std::to_string(universe));
    }
    bits |= Bits{1} << p;
  }
  return {universe, bits};
}

void SubsetMask::require_same_universe(const SubsetMask& o) const {
  if (universe_ != o.universe_) {
    throw InputError("set operation across universes of size " + std::to_string(universe_) +
                     " and " + std::to_string(o.universe_));
  }
}

bool SubsetMask::subset_of(const SubsetMask& other) const {
  require_same_universe(other);
  return (bits_ & ~other.bits_) == 0;
}

bool SubsetMask::disjoint_from(const SubsetMask& other) const {
  require_same_universe(other);
  return (bits_ & other.bits_) == 0;
}

SubsetMask SubsetMask::operator&(const SubsetMask& o) const {
  require_same_universe(o);
  return {universe_, bits_ & o.bits_, Raw{}};
}

SubsetMask SubsetMask::operator|(const SubsetMask& o) const {
  require_same_universe(o);
  return {universe_, bits_ | o.bits_, Raw{}};
}

SubsetMask SubsetMask::operator-(const SubsetMask& o) const {
  require_same_universe(o);
  return {universe_, bits_ & ~o.bits_, Raw{}};
}

std::vector<std::size_t> SubsetMask::points() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::string SubsetMask::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t p : points()) {
    if (!first) s += ',';
    s += std::to_string(p);
    first = false;
  }
  return s + "}";
}

Partition::Partition(std::size_t universe, std::vector<SubsetMask> blocks)
    : universe_(universe), blocks_(std::move(blocks)) {
  Bits seen = 0;
  for (const auto& b : blocks_) {
    if (b.universe_size() != universe) throw InputError("partition block has the wrong universe");
    if (b.is_empty()) throw InputError("partition block is empty");
    if ((seen & b.bits()) != 0) throw InputError("partition blocks overlap");
    seen |= b.bits();
  }
  if (seen != full_bits(universe)) throw InputError("partition blocks do not cover the universe");
  std::sort(blocks_.begin(), blocks_.end(), [](const SubsetMask& a, const SubsetMask& b) {
    return std::countr_zero(a.bits()) < std::countr_zero(b.bits());
  });
}

std::size_t Partition::block_of(std::size_t point) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].contains(point)) return i;
  }
  throw InputError("point " + std::to_string(point) + " outside partitioned universe");
}

}  // namespace phiset
