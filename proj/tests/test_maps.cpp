#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

namespace phiset {
namespace {

using test::C;
using test::S;
using test::W;

PointMap map001() { return {FinSpace::discrete(3), FinSpace::discrete(2), {0, 0, 1}}; }

TEST(PointMap, ValidatesTable) {
  EXPECT_THROW(PointMap(FinSpace::discrete(3), FinSpace::discrete(2), {0, 0}), InputError);
  EXPECT_THROW(PointMap(FinSpace::discrete(2), FinSpace::discrete(2), {0, 2}), InputError);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(map001()), Partition(3, {S(3, {0, 1}), S(3, {2})}));
  EXPECT_EQ(kernel(PointMap::identity(FinSpace::discrete(3))).size(), 3U);
  EXPECT_EQ(kernel(PointMap::constant(FinSpace::discrete(3), FinSpace::discrete(2), 1)),
            Partition(3, {S(3, {0, 1, 2})}));
}

TEST(AlgContains, Examples) {
  EXPECT_TRUE(alg_contains(map001(), S(3, {0, 1})));
  EXPECT_FALSE(alg_contains(map001(), S(3, {0})));
  EXPECT_EQ(map001().saturation(S(3, {0})), S(3, {0, 1}));
  EXPECT_TRUE(alg_contains(map001(), SubsetMask::empty(3)));
}

TEST(AlgEnumerate, Examples) {
  EXPECT_EQ(alg_enumerate(map001()), C(3, {{}, {0, 1}, {2}, {0, 1, 2}}));
  EXPECT_EQ(alg_enumerate(PointMap::identity(FinSpace::discrete(2))), SetClass::power_set(2));
  EXPECT_EQ(alg_enumerate(PointMap::constant(FinSpace::discrete(3), FinSpace::discrete(1), 0)),
            C(3, {{}, {0, 1, 2}}));
}

TEST(AlgEnumerate, FiberCapIsResourceError) {
  Limits small;
  small.max_fibers = 2;
  EXPECT_THROW(alg_enumerate(PointMap::identity(FinSpace::discrete(3)), small), ResourceError);
}

TEST(PreimageClass, Examples) {
  EXPECT_EQ(preimage_class(map001(), C(2, {{0}, {1}})), C(3, {{0, 1}, {2}}));
  const auto cls = C(3, {{0}, {1, 2}});
  EXPECT_EQ(preimage_class(PointMap::identity(FinSpace::discrete(3)), cls), cls);
  EXPECT_EQ(preimage_class(PointMap::constant(FinSpace::discrete(3), FinSpace::discrete(2), 0), C(2, {{0}})),
            C(3, {{0, 1, 2}}));
}

TEST(ImageClass, Examples) {
  EXPECT_EQ(image_class(map001(), C(3, {{0}, {2}})), C(2, {{0}, {1}}));
  EXPECT_EQ(image_class(map001(), SetClass(3, {S(3, {0}) & S(3, {1})})), C(2, {{}}));
}

TEST(ImageClass, DoesNotCommuteWithIntersection) {
  const PointMap f(FinSpace::discrete(2), FinSpace::discrete(1), {0, 0});
  const auto a = S(2, {0});
  const auto b = S(2, {1});
  EXPECT_EQ(f.image(a & b), SubsetMask::empty(1));
  EXPECT_EQ(f.image(a) & f.image(b), S(1, {0}));
}

TEST(DiagonalProduct, SeparatesPoints) {
  const std::vector<PointMap> maps{map001(), PointMap(FinSpace::discrete(3), FinSpace::discrete(2), {0, 1, 1})};
  const DiagonalProduct d = diagonal_product(maps);
  EXPECT_EQ(d.codec.size(), 4U);
  EXPECT_EQ(d.map.table(), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(kernel(d.map).size(), 3U);
  EXPECT_EQ(alg_enumerate(d.map), SetClass::power_set(3));
  EXPECT_TRUE(alg_contains(d.map, S(3, {0, 1})));
}

TEST(DiagonalProduct, SingleMapIsCodecIsomorphic) {
  const std::vector<PointMap> maps{map001()};
  const DiagonalProduct d = diagonal_product(maps);
  EXPECT_EQ(d.map.table(), map001().table());
  EXPECT_EQ(d.map.cod(), map001().cod());
}

TEST(DiagonalProduct, Errors) {
  EXPECT_THROW(diagonal_product(std::vector<PointMap>{}), InputError);
  const std::vector<PointMap> mixed{map001(), PointMap::identity(FinSpace::discrete(2))};
  EXPECT_THROW(diagonal_product(mixed), InputError);
  Limits small;
  small.max_points = 3;
  const std::vector<PointMap> two{map001(), map001()};
  EXPECT_THROW(diagonal_product(two, small), ResourceError);
}

TEST(MapProperties, Identity) {
  const MapProps p = map_properties(PointMap::identity(FinSpace::discrete(3)));
  EXPECT_TRUE(p.continuous && p.closed_map && p.open_map && p.fibers_closed && p.surjective && p.injective);
  EXPECT_FALSE(p.empty_fibers_dropped);
  // Singleton fibers are closed only when points are.
  const MapProps v = map_properties(PointMap::identity(test::vee()));
  EXPECT_TRUE(v.continuous && v.closed_map && v.open_map && v.surjective && v.injective);
  EXPECT_FALSE(v.fibers_closed);
}

TEST(MapProperties, CollapseToPoint) {
  const MapProps p = map_properties(PointMap(FinSpace::discrete(2), FinSpace::discrete(1), {0, 0}));
  EXPECT_TRUE(p.continuous && p.closed_map && p.open_map && p.fibers_closed && p.surjective);
  EXPECT_FALSE(p.injective);
}

TEST(MapProperties, SierpinskiSwapIsNotContinuous) {
  const PointMap f(FinSpace::sierpinski(), FinSpace::sierpinski(), {1, 0});
  EXPECT_EQ(f.preimage(S(2, {0})), S(2, {1}));
  EXPECT_FALSE(map_properties(f).continuous);
}

TEST(MapProperties, NonSurjectiveFlagsDroppedFibers) {
  const MapProps p = map_properties(map001());
  EXPECT_FALSE(map_properties(PointMap::constant(FinSpace::discrete(2), FinSpace::discrete(2), 0)).surjective);
  EXPECT_TRUE(p.surjective);
  EXPECT_TRUE(map_properties(PointMap::constant(FinSpace::discrete(2), FinSpace::discrete(2), 0)).empty_fibers_dropped);
}

TEST(IndexOrder, RelationValidation) {
  const std::vector<std::pair<std::size_t, std::size_t>> cyc{{0, 1}, {1, 0}};
  EXPECT_THROW(IndexOrder::from_relation(2, cyc), InputError);
  const std::vector<std::pair<std::size_t, std::size_t>> bad{{0, 3}};
  EXPECT_THROW(IndexOrder::from_relation(2, bad), InputError);
  EXPECT_THROW(IndexOrder::from_relation(0, {}), InputError);
  const std::vector<std::pair<std::size_t, std::size_t>> trans{{0, 1}, {1, 2}};
  const IndexOrder o = IndexOrder::from_relation(3, trans);
  EXPECT_TRUE(o.le(0, 2));
  EXPECT_TRUE(o.directed());
  EXPECT_FALSE(IndexOrder::from_relation(2, {}).directed());
}

TEST(DirectedImage, ChainDecreasing) {
  const auto order = IndexOrder::chain(2);
  const std::vector<SubsetMask> fam{S(3, {0, 1, 2}), S(3, {0, 2})};
  const auto r = directed_image_check(map001(), order, fam);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.image_of_intersection, S(2, {0, 1}));
}

TEST(DirectedImage, NonDecreasingCounterexample) {
  const std::vector<std::pair<std::size_t, std::size_t>> le{{0, 2}, {1, 2}};
  const auto order = IndexOrder::from_relation(3, le);
  const std::vector<SubsetMask> fam{S(2, {0}), S(2, {1}), S(2, {0, 1})};
  const PointMap f(FinSpace::discrete(2), FinSpace::discrete(1), {0, 0});
  const auto r = directed_image_check(f, order, fam);
  EXPECT_TRUE(r.directed);
  EXPECT_FALSE(r.decreasing);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.image_of_intersection, SubsetMask::empty(1));
  EXPECT_EQ(r.intersection_of_images, S(1, {0}));
}

TEST(DirectedImage, SingletonIndex) {
  const std::vector<SubsetMask> fam{S(3, {1})};
  EXPECT_TRUE(directed_image_check(map001(), IndexOrder::chain(1), fam).equal);
}

TEST(DirectedImage, FamilySizeMustMatchOrder) {
  const std::vector<SubsetMask> fam{S(3, {1})};
  EXPECT_THROW(directed_image_check(map001(), IndexOrder::chain(2), fam), InputError);
}

TEST(ImageEval, DecreasingFamiliesCommute) {
  const Base base(2, {W({0, 0}), W({1})});
  auto fam = IndexedFamily::prefix(3);
  fam.set(W({0}), S(3, {0})).set(W({0, 0}), S(3, {1})).set(W({1}), S(3, {2}));
  const auto raw = image_eval_check(map001(), base, fam);
  EXPECT_FALSE(raw.decreasing);
  EXPECT_FALSE(raw.equal);
  EXPECT_EQ(raw.image_of_eval, S(2, {1}));
  EXPECT_EQ(raw.eval_of_images, S(2, {0, 1}));
  const auto fixed = image_eval_check(map001(), base, decreasing_replacement(fam));
  EXPECT_TRUE(fixed.decreasing);
  EXPECT_TRUE(fixed.equal);
}

TEST(PreimageEval, PreimageCommutesWithEvalOnSmallMaps) {
  const std::vector<std::size_t> table{0, 1, 1};
  const PointMap f(FinSpace::discrete(3), FinSpace::discrete(2), table);
  for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
    for (const Base& base : oracle::all_bases(2, 2, mode)) {
      oracle::for_each_family(base, mode, 2, {0, 1, 2, 3}, [&](const IndexedFamily& fam) {
        const Bits lhs = oracle::preimage(table, oracle::eval(base, fam, mode));
        ASSERT_EQ(eval(base, preimage_family(f, fam), mode).bits(), lhs);
      });
    }
  }
}

TEST(FiberAlgebra, AlgebraMatchesBruteForce) {
  for (const auto& table : std::vector<std::vector<std::size_t>>{{0, 0, 1}, {1, 1, 1, 0}, {0, 1, 2, 0}}) {
    const PointMap f(FinSpace::discrete(table.size()), FinSpace::discrete(3), table);
    EXPECT_EQ(oracle::bits_of(alg_enumerate(f)), oracle::algebra(table));
    EXPECT_EQ(alg_enumerate(f).size(), std::size_t{1} << kernel(f).size());
  }
}

}  // namespace
}  // namespace phiset
