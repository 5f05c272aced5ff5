#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phiset/classes.hpp"
#include "phiset/finspace.hpp"
#include "phiset/hausdorff.hpp"
#include "phiset/maps.hpp"

namespace phiset {

enum class Property { reduction, separation };

const char* to_string(Property p);
Property property_from_string(const std::string& s);

/// (F⁻¹C, F⁻¹D) for a reduction (C, D) of (FA, FB). Pure set algebra: only
/// the saturation F⁻¹FA = A of the inputs is used. Throws PreconditionError
/// when A or B is not a union of fibers or the codomain witness does not
/// reduce (FA, FB).
ReductionWitness pull_back_reduction(const PointMap& f, const SubsetMask& a, const SubsetMask& b,
                                     const ReductionWitness& in_codomain);
/// F⁻¹C for a separator C of (FA, FB).
SeparationWitness pull_back_separation(const PointMap& f, const SubsetMask& a, const SubsetMask& b,
                                       const SeparationWitness& in_codomain);

struct HypothesisFailure {
  char hypothesis = 'a';  // 'a': F, F⁻¹ preserve generators; 'b': generators in alg F; 'c': target property
  std::string detail;
  std::optional<SubsetMask> set;
  std::optional<std::pair<SubsetMask, SubsetMask>> pair;
};

struct TransferStep {
  SubsetMask a, b;              // pair in Φ(generators on X)
  SubsetMask image_a, image_b;  // FA, FB
  SubsetMask target_c, target_d;  // witness in Φ(generators on Y); d unused for separation
  SubsetMask pulled_c, pulled_d;  // F⁻¹C, F⁻¹D
  bool valid = false;
};

struct TransferReport {
  Property property = Property::reduction;
  bool preserves_generators = false;  // (a)
  bool generators_in_algebra = false; // (b)
  bool target_has_property = false;   // (c)
  std::vector<HypothesisFailure> failures;
  SetClass source_class;  // Φ(𝒮, X)
  SetClass target_class;  // Φ(𝒮, Y)
  std::vector<TransferStep> steps;
  bool holds = false;
};

/// Establish reduction (separation) of Φ(generators_x) by pulling witnesses
/// back from Φ(generators_y) through F. Every hypothesis is evaluated and
/// reported; witnesses are only transferred when all of them hold. Each
/// pulled-back witness is re-verified, including membership in Φ(generators_x)
/// (in Δ of it, for separation).
TransferReport transfer_property(const PointMap& f, const Base& base, const SetClass& generators_x,
                                 const SetClass& generators_y, EvalMode mode, Property which,
                                 const Limits& limits = default_limits());

struct ZeroWitness {
  /// One continuous {0 on Z, 1 off Z} map into the discrete 2-point space per zero set.
  std::vector<PointMap> indicators;
  /// Diagonal product of the indicators (a map to the 1-point space when there are none).
  DiagonalProduct product;
  bool indicators_continuous = false;
  /// in_algebra[n] <=> zeros[n] ∈ alg F.
  std::vector<bool> in_algebra;

  bool certified() const;
};

/// Throws PreconditionError when a listed set is not a zero set of the space.
ZeroWitness zero_witness_map(const FinSpace& space, const std::vector<SubsetMask>& zeros,
                             const Limits& limits = default_limits());

struct ZeroTraceGap {
  Subspace sub;
  SetClass traces;     // 𝒵(Y)↾X, re-indexed into the subspace
  SetClass intrinsic;  // 𝒵(X)
  SetClass gap;        // intrinsic ∖ traces
  bool traces_included = false;
  /// The gap as sets of Y.
  SetClass lifted_gap() const;
};

ZeroTraceGap zero_trace_gap(const FinSpace& space, const SubsetMask& carrier);

}  // namespace phiset
