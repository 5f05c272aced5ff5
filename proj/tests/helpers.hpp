#pragma once

#include <initializer_list>
#include <vector>

#include "phiset/phiset.hpp"

namespace phiset::test {

inline SubsetMask S(std::size_t n, std::initializer_list<std::size_t> points) {
  return SubsetMask::of(n, points);
}

inline SetClass C(std::size_t n, std::initializer_list<std::initializer_list<std::size_t>> members) {
  std::vector<SubsetMask> out;
  for (auto m : members) out.push_back(SubsetMask::of(n, m));
  return {n, std::move(out)};
}

inline Word W(std::initializer_list<std::uint8_t> symbols) { return Word(symbols); }

// The connected 3-point space with opens {}, {1}, {0,1}, {1,2}, X.
inline FinSpace vee() {
  const std::vector<SubsetMask> sub{SubsetMask::of(3, {0, 1}), SubsetMask::of(3, {1, 2})};
  return FinSpace::generate(3, sub);
}

}  // namespace phiset::test
