#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phiset/limits.hpp"
#include "phiset/set_class.hpp"
#include "phiset/subset_mask.hpp"

namespace phiset {

/// A finite topological space on the points {0, ..., n-1}.
///
/// The topology is stored extensionally: every open set, in canonical order.
/// Alongside it we keep each point's minimal open neighbourhood, which
/// determines the topology (a set is open iff it contains the minimal
/// neighbourhood of each of its points).
class FinSpace {
 public:
  FinSpace() : FinSpace(discrete(0)) {}

  /// Smallest topology on n points containing every subbasis element.
  static FinSpace generate(std::size_t n, std::span<const SubsetMask> subbasis,
                           const Limits& limits = default_limits());
  /// Validate an explicit list of opens; throws InputError if it is not a topology.
  static FinSpace from_opens(std::size_t n, std::span<const SubsetMask> opens,
                             const Limits& limits = default_limits());
  /// Space whose minimal neighbourhoods are given directly. Each neighbourhood
  /// must contain its point and be closed under the induced preorder.
  static FinSpace from_neighbourhoods(std::vector<SubsetMask> neighbourhoods,
                                      const Limits& limits = default_limits());

  static FinSpace discrete(std::size_t n);
  static FinSpace indiscrete(std::size_t n);
  /// Two points, opens {}, {0}, {0,1}.
  static FinSpace sierpinski();

  std::size_t size() const { return n_; }
  const std::vector<SubsetMask>& opens() const { return opens_; }
  const SubsetMask& minimal_neighbourhood(std::size_t point) const;
  const std::vector<SubsetMask>& minimal_neighbourhoods() const { return nbhd_; }

  bool is_open(const SubsetMask& set) const;
  bool is_closed(const SubsetMask& set) const { return is_open(set.complement()); }
  bool is_discrete() const;
  /// Every singleton is closed; for finite spaces this is equivalent to discreteness.
  bool is_t1() const;

  SubsetMask universe() const { return SubsetMask::full(n_); }

  friend bool operator==(const FinSpace& a, const FinSpace& b) {
    return a.n_ == b.n_ && a.opens_ == b.opens_;
  }

 private:
  FinSpace(std::size_t n, std::vector<SubsetMask> nbhd, std::vector<SubsetMask> opens)
      : n_(n), nbhd_(std::move(nbhd)), opens_(std::move(opens)) {}
  static FinSpace build(std::size_t n, std::vector<SubsetMask> nbhd, const Limits& limits);

  std::size_t n_ = 0;
  std::vector<SubsetMask> nbhd_;
  std::vector<SubsetMask> opens_;
};

SetClass open_sets(const FinSpace& space);
/// Complements of the opens.
SetClass closed_sets(const FinSpace& space);
/// Connected components, ordered by least point.
Partition components(const FinSpace& space);
/// Zero sets: preimages of 0 under continuous maps into [0,1]. On a finite
/// space these are exactly the unions of connected components.
SetClass zero_sets(const FinSpace& space);

/// A subspace together with the re-indexing of its carrier.
struct Subspace {
  FinSpace space;
  SubsetMask carrier;
  /// points[i] is the original point that became point i of the subspace.
  std::vector<std::size_t> points;

  /// Trace of a set of the ambient space, re-indexed into the subspace.
  SubsetMask restrict(const SubsetMask& ambient) const;
  /// Inverse of the re-indexing: a subspace set as a set of the ambient space.
  SubsetMask lift(const SubsetMask& local) const;
};

Subspace subspace(const FinSpace& space, const SubsetMask& carrier);

/// Bijection between tuples and flat indices, row-major with the leftmost
/// factor most significant.
class ProductCodec {
 public:
  ProductCodec() = default;
  explicit ProductCodec(std::vector<std::size_t> radices);

  const std::vector<std::size_t>& radices() const { return radices_; }
  std::size_t size() const { return size_; }
  std::size_t encode(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> decode(std::size_t index) const;

 private:
  std::vector<std::size_t> radices_;
  std::size_t size_ = 1;
};

struct ProductSpace {
  FinSpace space;
  ProductCodec codec;
};

/// Product topology on the cartesian product of the factors.
ProductSpace product(std::span<const FinSpace> factors, const Limits& limits = default_limits());

/// Every topology on n points, one per reflexive-transitive relation
/// (specialization preorder), in a fixed order.
std::vector<FinSpace> all_topologies(std::size_t n);

}  // namespace phiset
