#include "phiset/transfer.hpp"

#include <algorithm>

#include "phiset/errors.hpp"

namespace phiset {

const char* to_string(Property p) { return p == Property::reduction ? "reduction" : "separation"; }

Property property_from_string(const std::string& s) {
  if (s == "reduction") return Property::reduction;
  if (s == "separation") return Property::separation;
  throw InputError("unknown property \"" + s + "\" (expected reduction or separation)");
}

namespace {

void require_saturated(const PointMap& f, const SubsetMask& a, const char* name) {
  if (!alg_contains(f, a)) {
    throw PreconditionError(std::string("input ") + name + " = " + a.to_string() +
                            " is not in alg F (F⁻¹F" + name + " = " + f.saturation(a).to_string() + ")");
  }
}

}  // namespace

ReductionWitness pull_back_reduction(const PointMap& f, const SubsetMask& a, const SubsetMask& b,
                                     const ReductionWitness& in_codomain) {
  require_saturated(f, a, "A");
  require_saturated(f, b, "B");
  if (in_codomain.a != f.image(a) || in_codomain.b != f.image(b) || !in_codomain.valid()) {
    throw PreconditionError("codomain witness does not reduce (FA, FB)");
  }
  return {a, b, f.preimage(in_codomain.c), f.preimage(in_codomain.d)};
}

SeparationWitness pull_back_separation(const PointMap& f, const SubsetMask& a, const SubsetMask& b,
                                       const SeparationWitness& in_codomain) {
  require_saturated(f, a, "A");
  require_saturated(f, b, "B");
  if (in_codomain.a != f.image(a) || in_codomain.b != f.image(b) || !in_codomain.separates()) {
    throw PreconditionError("codomain witness does not separate (FA, FB)");
  }
  return {a, b, f.preimage(in_codomain.c)};
}

TransferReport transfer_property(const PointMap& f, const Base& base, const SetClass& generators_x,
                                 const SetClass& generators_y, EvalMode mode, Property which,
                                 const Limits& limits) {
  if (generators_x.universe_size() != f.dom().size() || generators_y.universe_size() != f.cod().size()) {
    throw InputError("generator classes must live on the map's domain and codomain");
  }
  TransferReport report;
  report.property = which;

  report.preserves_generators = true;
  for (const auto& a : generators_x) {
    const SubsetMask fa = f.image(a);
    if (!generators_y.contains(fa)) {
      report.preserves_generators = false;
      report.failures.push_back({'a', "F" + a.to_string() + " = " + fa.to_string() + " is not a generator on Y", a, {}});
    }
  }
  for (const auto& b : generators_y) {
    const SubsetMask pb = f.preimage(b);
    if (!generators_x.contains(pb)) {
      report.preserves_generators = false;
      report.failures.push_back({'a', "F⁻¹" + b.to_string() + " = " + pb.to_string() + " is not a generator on X", b, {}});
    }
  }

  report.generators_in_algebra = true;
  for (const auto& a : generators_x) {
    if (!alg_contains(f, a)) {
      report.generators_in_algebra = false;
      report.failures.push_back({'b', "generator " + a.to_string() + " is not a union of fibers of F", a, {}});
    }
  }

  report.target_class = generate_class(base, generators_y, mode, limits);
  std::optional<std::pair<SubsetMask, SubsetMask>> target_failure;
  if (which == Property::reduction) {
    target_failure = check_reduction(report.target_class).failing_pair;
  } else {
    target_failure = check_separation(report.target_class).failing_pair;
  }
  report.target_has_property = !target_failure.has_value();
  if (target_failure) {
    report.failures.push_back({'c', std::string("Φ(𝒮, Y) lacks ") + to_string(which) + " at " +
                                        target_failure->first.to_string() + ", " + target_failure->second.to_string(),
                               {}, target_failure});
  }
  if (!report.failures.empty()) return report;

  report.source_class = generate_class(base, generators_x, mode, limits);
  const SetClass source_delta = delta_class(report.source_class);
  const SetClass target_delta = delta_class(report.target_class);
  bool all_valid = true;
  for (const auto& a : report.source_class) {
    for (const auto& b : report.source_class) {
      if (which == Property::separation && !a.disjoint_from(b)) continue;
      TransferStep step;
      step.a = a;
      step.b = b;
      step.image_a = f.image(a);
      step.image_b = f.image(b);
      if (which == Property::reduction) {
        const auto target = find_reduction(report.target_class, step.image_a, step.image_b);
        if (!target) {
          report.failures.push_back({'c', "no reduction of the images in Φ(𝒮, Y)", {}, std::make_pair(step.image_a, step.image_b)});
          all_valid = false;
          continue;
        }
        const ReductionWitness pulled = pull_back_reduction(f, a, b, *target);
        step.target_c = target->c;
        step.target_d = target->d;
        step.pulled_c = pulled.c;
        step.pulled_d = pulled.d;
        step.valid = pulled.valid() && report.source_class.contains(pulled.c) &&
                     report.source_class.contains(pulled.d);
      } else {
        const auto target = find_separation(target_delta, step.image_a, step.image_b);
        if (!target) {
          report.failures.push_back({'c', "no separation of the images in Φ(𝒮, Y)", {}, std::make_pair(step.image_a, step.image_b)});
          all_valid = false;
          continue;
        }
        const SeparationWitness pulled = pull_back_separation(f, a, b, *target);
        step.target_c = target->c;
        step.target_d = SubsetMask::empty(f.cod().size());
        step.pulled_c = pulled.c;
        step.pulled_d = SubsetMask::empty(f.dom().size());
        step.valid = pulled.separates() && source_delta.contains(pulled.c);
      }
      all_valid = all_valid && step.valid;
      report.steps.push_back(step);
    }
  }
  report.holds = all_valid;
  return report;
}

bool ZeroWitness::certified() const {
  return indicators_continuous && std::all_of(in_algebra.begin(), in_algebra.end(), [](bool b) { return b; });
}

ZeroWitness zero_witness_map(const FinSpace& space, const std::vector<SubsetMask>& zeros,
                             const Limits& limits) {
  const SetClass zero_class = zero_sets(space);
  for (const auto& z : zeros) {
    if (!zero_class.contains(z)) {
      throw PreconditionError(z.to_string() + " is not a zero set of the space");
    }
  }
  ZeroWitness out{{}, {PointMap::constant(space, FinSpace::discrete(1), 0), ProductCodec(std::vector<std::size_t>{})}, true, {}};
  const FinSpace two = FinSpace::discrete(2);
  for (const auto& z : zeros) {
    std::vector<std::size_t> table(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) table[x] = z.contains(x) ? 0 : 1;
    out.indicators.emplace_back(space, two, std::move(table));
    out.indicators_continuous = out.indicators_continuous && map_properties(out.indicators.back()).continuous;
  }
  if (!zeros.empty()) out.product = diagonal_product(out.indicators, limits);
  for (const auto& z : zeros) out.in_algebra.push_back(alg_contains(out.product.map, z));
  return out;
}

SetClass ZeroTraceGap::lifted_gap() const {
  std::vector<SubsetMask> out;
  for (const auto& g : gap) out.push_back(sub.lift(g));
  return {sub.carrier.universe_size(), std::move(out)};
}

ZeroTraceGap zero_trace_gap(const FinSpace& space, const SubsetMask& carrier) {
  ZeroTraceGap out{subspace(space, carrier), {}, {}, {}, false};
  out.traces = restrict_class(zero_sets(space), carrier);
  out.intrinsic = zero_sets(out.sub.space);
  out.gap = out.intrinsic.difference(out.traces);
  out.traces_included = out.traces.subset_of(out.intrinsic);
  return out;
}

}  // namespace phiset
