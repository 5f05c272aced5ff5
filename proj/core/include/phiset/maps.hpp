#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phiset/finspace.hpp"
#include "phiset/hausdorff.hpp"
#include "phiset/limits.hpp"
#include "phiset/set_class.hpp"

namespace phiset {

/// A total function between two finite spaces. Continuity is not required;
/// see map_properties().
class PointMap {
 public:
  PointMap(FinSpace dom, FinSpace cod, std::vector<std::size_t> table);

  static PointMap identity(const FinSpace& space);
  static PointMap constant(const FinSpace& dom, const FinSpace& cod, std::size_t value);

  const FinSpace& dom() const { return dom_; }
  const FinSpace& cod() const { return cod_; }
  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t operator()(std::size_t x) const { return table_[x]; }

  /// FA = {F(x) : x in A}.
  SubsetMask image(const SubsetMask& a) const;
  /// F⁻¹B = {x : F(x) in B}.
  SubsetMask preimage(const SubsetMask& b) const;
  /// F⁻¹FA: the saturation of A by the fibers of F.
  SubsetMask saturation(const SubsetMask& a) const { return preimage(image(a)); }
  SubsetMask range() const { return image(dom_.universe()); }

  friend bool operator==(const PointMap&, const PointMap&) = default;

 private:
  FinSpace dom_;
  FinSpace cod_;
  std::vector<std::size_t> table_;
};

/// Nonempty fibers of F, ordered by least point.
Partition kernel(const PointMap& f);

/// A ∈ alg F  <=>  F⁻¹FA = A.
bool alg_contains(const PointMap& f, const SubsetMask& a);
/// All unions of fibers.
SetClass alg_enumerate(const PointMap& f, const Limits& limits = default_limits());

SetClass preimage_class(const PointMap& f, const SetClass& cls);
SetClass image_class(const PointMap& f, const SetClass& cls);

/// (F⁻¹A_i)_i over the domain.
IndexedFamily preimage_family(const PointMap& f, const IndexedFamily& family);
/// (FA_i)_i over the codomain.
IndexedFamily image_family(const PointMap& f, const IndexedFamily& family);

struct DiagonalProduct {
  PointMap map;
  ProductCodec codec;
};

/// x ↦ (F_i(x))_i into the product of the codomains.
DiagonalProduct diagonal_product(std::span<const PointMap> maps,
                                 const Limits& limits = default_limits());

struct MapProps {
  bool continuous = false;
  bool closed_map = false;
  bool open_map = false;
  bool fibers_closed = false;  // closed-to-one
  bool surjective = false;
  bool injective = false;
  /// The codomain has points outside the range, so F⁻¹{y} = ∅ for some y.
  /// kernel() leaves those empty preimages out.
  bool empty_fibers_dropped = false;
};

MapProps map_properties(const PointMap& f);

/// A finite partial order on the indices {0, ..., size-1}.
class IndexOrder {
 public:
  /// Reflexive-transitive closure of the given `le` pairs; throws InputError
  /// on out-of-range indices or when the closure is not antisymmetric.
  static IndexOrder from_relation(std::size_t size,
                                  std::span<const std::pair<std::size_t, std::size_t>> le);
  static IndexOrder chain(std::size_t size);

  std::size_t size() const { return size_; }
  bool le(std::size_t i, std::size_t j) const { return (above_[i] >> j) & 1U; }
  /// Every pair of indices has a common upper bound.
  bool directed() const;
  /// Covering-free listing of the relation (all pairs i <= j, i != j).
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

 private:
  std::size_t size_ = 0;
  std::vector<Bits> above_;  // above_[i] bit j  <=>  i <= j
};

struct DirectedImageCheck {
  bool directed = false;
  bool decreasing = false;
  SubsetMask image_of_intersection;   // F(⋂ A_i)
  SubsetMask intersection_of_images;  // ⋂ F(A_i)
  bool equal = false;
  /// Both hypotheses hold, so equality is guaranteed for finite maps.
  bool hypotheses_hold() const { return directed && decreasing; }
};

DirectedImageCheck directed_image_check(const PointMap& f, const IndexOrder& order,
                                        std::span<const SubsetMask> family);

struct ImageEvalCheck {
  bool decreasing = false;
  SubsetMask image_of_eval;  // F(Φ(A_s))
  SubsetMask eval_of_images; // Φ(F A_s)
  bool equal = false;
};

/// Compare F applied after a prefix-mode evaluation with the evaluation of
/// the image family. Equality is guaranteed when the family is decreasing
/// over the base's prefixes.
ImageEvalCheck image_eval_check(const PointMap& f, const Base& base, const IndexedFamily& family);

}  // namespace phiset
