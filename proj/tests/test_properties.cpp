#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"

namespace phiset {
namespace {

std::vector<FinSpace> spaces_up_to(std::size_t n) {
  std::vector<FinSpace> out;
  for (std::size_t k = 1; k <= n; ++k) {
    auto t = all_topologies(k);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

TEST(FinSpaceInvariants, OpensFormATopologyAndClosedsAreComplements) {
  for (const FinSpace& s : spaces_up_to(4)) {
    const auto opens = oracle::opens_of(s);
    for (Bits a : opens)
      for (Bits b : opens) {
        ASSERT_TRUE(opens.count(a | b));
        ASSERT_TRUE(opens.count(a & b));
      }
    const SetClass closed = closed_sets(s);
    ASSERT_EQ(closed.size(), s.opens().size());
    for (const auto& o : s.opens()) ASSERT_TRUE(closed.contains(o.complement()));
    ASSERT_TRUE(std::is_sorted(s.opens().begin(), s.opens().end(), CanonicalLess{}));
  }
}

TEST(FinSpaceInvariants, ZeroSetsMatchIndicatorOracle) {
  for (const FinSpace& s : spaces_up_to(4)) {
    const SetClass z = zero_sets(s);
    ASSERT_EQ(oracle::bits_of(z), oracle::zero_sets_by_indicators(s));
    ASSERT_TRUE(z.subset_of(closed_sets(s)));
    ASSERT_EQ(z == SetClass::power_set(s.size()), s.is_discrete());
  }
}

TEST(FinSpaceInvariants, SubspaceIsFunctorialOnCarriers) {
  for (const FinSpace& s : spaces_up_to(3)) {
    const Bits top = full_bits(s.size());
    for (Bits a = 0; a <= top; ++a) {
      const Subspace sa = subspace(s, SubsetMask(s.size(), a));
      for (Bits b = a;; b = (b - 1) & a) {
        const SubsetMask carrier_b(s.size(), b);
        const Subspace nested = subspace(sa.space, sa.restrict(carrier_b));
        ASSERT_EQ(nested.space, subspace(s, carrier_b).space);
        if (b == 0) break;
      }
    }
  }
}

TEST(FinSpaceInvariants, ProductSlicesAreCopiesOfTheFactor) {
  const auto small = spaces_up_to(2);
  for (const FinSpace& y : small) {
    for (const FinSpace& x : spaces_up_to(3)) {
      const std::vector<FinSpace> factors{y, x};
      const ProductSpace p = product(factors);
      for (std::size_t yi = 0; yi < y.size(); ++yi) {
        std::vector<std::size_t> pts;
        for (std::size_t xi = 0; xi < x.size(); ++xi) pts.push_back(p.codec.encode(std::vector<std::size_t>{yi, xi}));
        ASSERT_EQ(subspace(p.space, SubsetMask::of(p.codec.size(), pts)).space, x);
      }
    }
  }
}

TEST(HausdorffInvariants, MonotoneAndDeMorgan) {
  for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
    for (const Base& base : oracle::all_bases(2, 2, mode)) {
      oracle::for_each_family(base, mode, 2, {0, 1, 2, 3}, [&](const IndexedFamily& fam) {
        const SubsetMask v = eval(base, fam, mode);
        ASSERT_EQ(dual_eval(base, fam, mode), eval(base, fam.complemented(), mode).complement());
        ASSERT_EQ(dual_eval(base, fam.complemented(), mode).complement(), v);
        // Enlarge one assigned set at a time.
        for (const auto& [w, m] : fam.word_entries()) {
          IndexedFamily bigger = fam;
          bigger.set(w, SubsetMask::full(2));
          ASSERT_TRUE(v.subset_of(eval(base, bigger, mode)));
        }
        for (const auto& [k, m] : fam.symbol_entries()) {
          IndexedFamily bigger = fam;
          bigger.set(k, SubsetMask::full(2));
          ASSERT_TRUE(v.subset_of(eval(base, bigger, mode)));
        }
      });
    }
  }
}

TEST(HausdorffInvariants, CompletionInvariance) {
  for (const Base& base : oracle::all_bases(2, 2, EvalMode::range)) {
    for (std::size_t bound = base.depth(); bound <= 3; ++bound) {
      const Base c = completion(base, bound);
      for (const Word& w : base.branches()) ASSERT_TRUE(std::binary_search(c.branches().begin(), c.branches().end(), w, LengthLexLess{}));
      oracle::for_each_family(base, EvalMode::range, 3, {0, 1, 3, 6, 7}, [&](const IndexedFamily& fam) {
        IndexedFamily full = fam;
        for (std::uint32_t s = 0; s < 2; ++s) {
          if (!fam.symbol_entries().count(s)) full.set(s, SubsetMask::empty(3));
        }
        ASSERT_EQ(eval(base, full, EvalMode::range), eval(c, full, EvalMode::range));
      });
    }
  }
}

TEST(HausdorffInvariants, DecreasingReplacementPreservesEval) {
  for (const Base& base : oracle::all_bases(2, 2, EvalMode::prefix)) {
    const auto idx = base.prefix_indices();
    oracle::for_each_family(base, EvalMode::prefix, 2, {0, 1, 2, 3}, [&](const IndexedFamily& fam) {
      const IndexedFamily dec = decreasing_replacement(fam, idx);
      ASSERT_TRUE(is_decreasing(dec, idx));
      ASSERT_EQ(eval(base, dec, EvalMode::prefix), eval(base, fam, EvalMode::prefix));
    });
  }
}

TEST(MapInvariants, DiagonalProductAbsorbsFactorAlgebras) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const FinSpace x = FinSpace::discrete(n);
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= n;
    std::vector<PointMap> maps;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<std::size_t> t(n);
      std::size_t r = code;
      for (std::size_t i = 0; i < n; ++i, r /= n) t[i] = r % n;
      maps.emplace_back(x, FinSpace::discrete(n), t);
    }
    for (const PointMap& f0 : maps)
      for (const PointMap& f1 : maps) {
        const std::vector<PointMap> pair{f0, f1};
        const DiagonalProduct d = diagonal_product(pair);
        for (Bits a = 0; a <= full_bits(n); ++a) {
          const SubsetMask m(n, a);
          const bool in_factor = alg_contains(f0, m) || alg_contains(f1, m);
          ASSERT_TRUE(!in_factor || alg_contains(d.map, m)) << m.to_string();
        }
      }
  }
}

TEST(ClassInvariants, MonotoneAndDualCoherent) {
  std::mt19937_64 rng(7);
  for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
    for (const Base& base : oracle::all_bases(2, 2, mode)) {
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Bits> small, large;
        for (Bits m = 0; m < 8; ++m) {
          const auto roll = rng() % 3;
          if (roll == 0) small.push_back(m);
          if (roll != 2) large.push_back(m);
        }
        if (small.empty()) small.push_back(5);
        large.insert(large.end(), small.begin(), small.end());
        const SetClass s = SetClass::from_bits(3, small);
        const SetClass t = SetClass::from_bits(3, large);
        ASSERT_TRUE(generate_class(base, s, mode).subset_of(generate_class(base, t, mode)));
        ASSERT_EQ(generate_dual_class(base, complement_class(s), mode),
                  complement_class(generate_class(base, s, mode)));
      }
    }
  }
}

TEST(ClassInvariants, ReductionOfOpensGivesSeparationOfClosedsOnThreePoints) {
  for (const FinSpace& s : spaces_up_to(3)) {
    const SetClass opens = open_sets(s);
    if (!check_reduction(opens).holds) continue;
    const SetClass closed = closed_sets(s);
    ASSERT_TRUE(check_separation(closed).holds);
    for (const auto& a : closed) {
      for (const auto& b : closed) {
        if (!a.disjoint_from(b)) continue;
        ASSERT_TRUE(reduction_to_separation(opens, a, b).valid(closed));
      }
    }
  }
}

TEST(TransferInvariants, TracesAlwaysIncludedAndDiscreteGapEmpty) {
  for (const FinSpace& s : spaces_up_to(4)) {
    for (Bits c = 0; c <= full_bits(s.size()); ++c) {
      const auto r = zero_trace_gap(s, SubsetMask(s.size(), c));
      ASSERT_TRUE(r.traces_included);
      ASSERT_TRUE(!s.is_discrete() || r.gap.empty());
    }
  }
}

}  // namespace
}  // namespace phiset
