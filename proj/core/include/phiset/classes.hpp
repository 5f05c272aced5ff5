#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "phiset/finspace.hpp"
#include "phiset/hausdorff.hpp"
#include "phiset/limits.hpp"
#include "phiset/set_class.hpp"

namespace phiset {

/// Number of generator assignments to the base's relevant indices,
/// |generators|^#indices, saturating at UINT64_MAX.
std::uint64_t assignment_count(const Base& base, EvalMode mode, std::size_t generator_count);

/// Φ(𝒮): every value of the operation over assignments of generators to the
/// base's relevant indices (nonempty prefixes, or symbols). In prefix mode
/// the empty prefix is the universe.
SetClass generate_class(const Base& base, const SetClass& generators, EvalMode mode,
                        const Limits& limits = default_limits());
/// The same over the dual operation.
SetClass generate_dual_class(const Base& base, const SetClass& generators, EvalMode mode,
                             const Limits& limits = default_limits());

SetClass complement_class(const SetClass& cls);
/// Members whose complement is also a member.
SetClass delta_class(const SetClass& cls);
/// Traces on the carrier, re-indexed to {0, ..., |carrier|-1} in increasing
/// order of the carrier's points.
SetClass restrict_class(const SetClass& cls, const SubsetMask& carrier);

struct ReductionWitness {
  SubsetMask a, b;  // inputs
  SubsetMask c, d;  // reducing pair
  /// C ⊆ A, D ⊆ B, C ∩ D = ∅, C ∪ D = A ∪ B.
  bool valid() const;
};

struct SeparationWitness {
  SubsetMask a, b;  // disjoint inputs
  SubsetMask c;     // separator
  /// A ⊆ C and B ∩ C = ∅.
  bool separates() const;
  /// separates() and C ∈ Δ(cls).
  bool valid(const SetClass& cls) const;
};

/// First (C, D) in class × class, in canonical order of C, reducing (A, B).
std::optional<ReductionWitness> find_reduction(const SetClass& cls, const SubsetMask& a, const SubsetMask& b);
/// First C ∈ Δ(cls), in canonical order, separating (A, B). `delta` must be delta_class(cls).
std::optional<SeparationWitness> find_separation(const SetClass& delta, const SubsetMask& a, const SubsetMask& b);

struct ReductionCheck {
  bool holds = false;
  /// One witness per ordered pair, in canonical pair order (complete on success).
  std::vector<ReductionWitness> witnesses;
  /// Least failing ordered pair.
  std::optional<std::pair<SubsetMask, SubsetMask>> failing_pair;
};

struct SeparationCheck {
  bool holds = false;
  std::vector<SeparationWitness> witnesses;  // one per ordered disjoint pair
  std::optional<std::pair<SubsetMask, SubsetMask>> failing_pair;
};

ReductionCheck check_reduction(const SetClass& cls);
SeparationCheck check_separation(const SetClass& cls);

/// Constructive reduction-to-separation: A, B are disjoint members of
/// complement_class(cls). Reduces (X∖A, X∖B) to (C, D) inside cls and returns
/// D as the separator of (A, B); D ∈ Δ(−cls). Throws PreconditionError when
/// the complement pair cannot be reduced in cls.
SeparationWitness reduction_to_separation(const SetClass& cls, const SubsetMask& a, const SubsetMask& b);

struct BorelLevel {
  SetClass sigma;
  SetClass pi;
  SetClass delta;
};

struct BorelLadder {
  /// levels[k] is level k+1.
  std::vector<BorelLevel> levels;
  bool stabilized = false;
};

/// Σ_1 = unions of nonempty subfamilies of the generators; Π_α = −Σ_α;
/// Σ_{α+1} = unions over ⋃_{β≤α} Π_β; Δ_α = Σ_α ∩ Π_α. Stops early once a
/// level repeats the previous one.
BorelLadder borel_ladder(const SetClass& generators, std::size_t depth,
                         const Limits& limits = default_limits());

/// Closure of a class under binary unions (= unions of nonempty finite subfamilies).
SetClass union_closure(const SetClass& cls);

}  // namespace phiset
