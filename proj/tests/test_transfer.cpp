#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

namespace phiset {
namespace {

using test::C;
using test::S;

PointMap map001() { return {FinSpace::discrete(3), FinSpace::discrete(2), {0, 0, 1}}; }

FinSpace two_components() {
  const std::vector<SubsetMask> sub{S(3, {0}), S(3, {0, 1}), S(3, {2})};
  return FinSpace::generate(3, sub);
}

TEST(PullBack, Reduction) {
  const ReductionWitness wy{S(2, {0}), S(2, {1}), S(2, {0}), S(2, {1})};
  const auto w = pull_back_reduction(map001(), S(3, {0, 1}), S(3, {2}), wy);
  EXPECT_EQ(w.c, S(3, {0, 1}));
  EXPECT_EQ(w.d, S(3, {2}));
  EXPECT_TRUE(w.valid());
}

TEST(PullBack, IdentityLeavesWitnessUnchanged) {
  const PointMap id = PointMap::identity(FinSpace::discrete(3));
  const ReductionWitness wy{S(3, {0, 1}), S(3, {1, 2}), S(3, {0, 1}), S(3, {2})};
  const auto w = pull_back_reduction(id, wy.a, wy.b, wy);
  EXPECT_EQ(w.c, wy.c);
  EXPECT_EQ(w.d, wy.d);
}

TEST(PullBack, Separation) {
  const SeparationWitness wy{S(2, {0}), S(2, {1}), S(2, {0})};
  const auto w = pull_back_separation(map001(), S(3, {0, 1}), S(3, {2}), wy);
  EXPECT_EQ(w.c, S(3, {0, 1}));
  EXPECT_TRUE(w.separates());
}

TEST(PullBack, NamesSetOutsideAlgebra) {
  const ReductionWitness wy{S(2, {0}), S(2, {1}), S(2, {0}), S(2, {1})};
  try {
    pull_back_reduction(map001(), S(3, {0}), S(3, {2}), wy);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("{0}"), std::string::npos) << e.what();
  }
  const ReductionWitness bogus{S(2, {0}), S(2, {1}), S(2, {0, 1}), S(2, {1})};
  EXPECT_THROW(pull_back_reduction(map001(), S(3, {0, 1}), S(3, {2}), bogus), PreconditionError);
}

TEST(TransferProperty, QuotientPipeline) {
  const PointMap f = map001();
  const auto report = transfer_property(f, union_base(2), alg_enumerate(f), SetClass::power_set(2),
                                        EvalMode::range, Property::reduction);
  EXPECT_TRUE(report.preserves_generators);
  EXPECT_TRUE(report.generators_in_algebra);
  EXPECT_TRUE(report.target_has_property);
  EXPECT_TRUE(report.failures.empty());
  EXPECT_EQ(report.steps.size(), 16U);
  for (const auto& step : report.steps) {
    EXPECT_TRUE(step.valid);
    const ReductionWitness w{step.a, step.b, step.pulled_c, step.pulled_d};
    EXPECT_TRUE(w.valid());
  }
  EXPECT_TRUE(report.holds);
}

TEST(TransferProperty, QuotientPipelineSeparation) {
  const PointMap f = map001();
  const auto report = transfer_property(f, union_base(2), alg_enumerate(f), SetClass::power_set(2),
                                        EvalMode::range, Property::separation);
  EXPECT_TRUE(report.holds);
  const SetClass delta = delta_class(report.source_class);
  for (const auto& step : report.steps) {
    EXPECT_TRUE((SeparationWitness{step.a, step.b, step.pulled_c}.valid(report.source_class)));
    EXPECT_TRUE(delta.contains(step.pulled_c));
  }
}

TEST(TransferProperty, IdentityAgreesWithDirectChecker) {
  const std::vector<FinSpace> spaces{FinSpace::sierpinski(), FinSpace::discrete(2)};
  for (const FinSpace& s : spaces) {
    const PointMap id = PointMap::identity(s);
    const SetClass gens = open_sets(s);
    for (const Base& base : {union_base(2), intersection_base(2), a_operation_base(2, 2)}) {
      const auto report = transfer_property(id, base, gens, gens, EvalMode::range, Property::reduction);
      EXPECT_EQ(report.holds, check_reduction(generate_class(base, gens, EvalMode::range)).holds);
    }
  }
  const PointMap id = PointMap::identity(test::vee());
  const SetClass gens = open_sets(test::vee());
  const auto report = transfer_property(id, union_base(2), gens, gens, EvalMode::range, Property::reduction);
  EXPECT_FALSE(report.holds);
  EXPECT_FALSE(report.target_has_property);
  EXPECT_FALSE(check_reduction(generate_class(union_base(2), gens, EvalMode::range)).holds);
}

TEST(TransferProperty, HypothesisBFailureNamesTheSet) {
  const PointMap f = map001();
  const SetClass gens_x = alg_enumerate(f).merged(C(3, {{0}}));
  const auto report = transfer_property(f, union_base(2), gens_x, SetClass::power_set(2), EvalMode::range,
                                        Property::reduction);
  EXPECT_FALSE(report.holds);
  EXPECT_FALSE(report.generators_in_algebra);
  EXPECT_TRUE(report.preserves_generators);
  ASSERT_EQ(report.failures.size(), 1U);
  EXPECT_EQ(report.failures[0].hypothesis, 'b');
  ASSERT_TRUE(report.failures[0].set);
  EXPECT_EQ(*report.failures[0].set, S(3, {0}));
  EXPECT_TRUE(report.steps.empty());
}

TEST(TransferProperty, HypothesisAFailure) {
  const PointMap f = map001();
  const auto report = transfer_property(f, union_base(2), C(3, {{0, 1}}), SetClass::power_set(2), EvalMode::range,
                                        Property::reduction);
  EXPECT_FALSE(report.preserves_generators);
  EXPECT_FALSE(report.holds);
}

TEST(TransferProperty, UniverseMismatch) {
  EXPECT_THROW(transfer_property(map001(), union_base(2), SetClass::power_set(2), SetClass::power_set(2),
                                 EvalMode::range, Property::reduction),
               InputError);
}

TEST(ZeroWitness, SingleZeroSet) {
  const auto w = zero_witness_map(two_components(), {S(3, {0, 1})});
  EXPECT_TRUE(w.certified());
  EXPECT_EQ(w.product.codec.size(), 2U);
  EXPECT_EQ(kernel(w.product.map), Partition(3, {S(3, {0, 1}), S(3, {2})}));
}

TEST(ZeroWitness, EmptyListMapsToPoint) {
  const auto w = zero_witness_map(two_components(), {});
  EXPECT_TRUE(w.certified());
  EXPECT_EQ(w.product.map.cod().size(), 1U);
  EXPECT_EQ(alg_enumerate(w.product.map), C(3, {{}, {0, 1, 2}}));
}

TEST(ZeroWitness, TwoZeroSetsStayInAlgebra) {
  const std::vector<SubsetMask> zeros{S(3, {0, 1}), S(3, {2})};
  const auto w = zero_witness_map(two_components(), zeros);
  EXPECT_TRUE(w.certified());
  EXPECT_EQ(w.product.codec.size(), 4U);
  const SetClass alg = alg_enumerate(w.product.map);
  EXPECT_EQ(alg, C(3, {{}, {0, 1}, {2}, {0, 1, 2}}));
  const SetClass gens(3, zeros);
  for (const Base& base : {union_base(2), intersection_base(2), a_operation_base(2, 2)}) {
    EXPECT_TRUE(generate_class(base, gens, EvalMode::prefix).subset_of(alg));
    EXPECT_TRUE(generate_class(base, gens, EvalMode::range).subset_of(alg));
  }
}

TEST(ZeroWitness, RejectsNonZeroSets) {
  EXPECT_THROW(zero_witness_map(two_components(), {S(3, {0})}), PreconditionError);
}

TEST(ZeroTraceGap, DiscreteHasNoGap) {
  for (Bits c = 0; c < 8; ++c) {
    const auto r = zero_trace_gap(FinSpace::discrete(3), SubsetMask(3, c));
    EXPECT_TRUE(r.gap.empty());
    EXPECT_TRUE(r.traces_included);
  }
}

TEST(ZeroTraceGap, VeeNeedsTychonoff) {
  const auto r = zero_trace_gap(test::vee(), S(3, {0, 2}));
  EXPECT_EQ(r.intrinsic, SetClass::power_set(2));
  EXPECT_EQ(r.traces, C(2, {{}, {0, 1}}));
  EXPECT_EQ(r.gap, C(2, {{0}, {1}}));
  EXPECT_EQ(r.lifted_gap(), C(3, {{0}, {2}}));
  EXPECT_TRUE(r.traces_included);
  EXPECT_EQ(oracle::bits_of(r.intrinsic), oracle::zero_sets_by_indicators(r.sub.space));
}

TEST(ZeroTraceGap, FullCarrier) {
  EXPECT_TRUE(zero_trace_gap(test::vee(), SubsetMask::full(3)).gap.empty());
}

}  // namespace
}  // namespace phiset
