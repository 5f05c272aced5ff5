#pragma once

#include <cstddef>
#include <cstdint>

namespace phiset {

// Size caps shared by every module. Spaces are stored extensionally, so the
// point cap bounds both the 2^n opens scan and the product codomains.
struct Limits {
  std::size_t max_points = 16;
  std::size_t max_alphabet = 6;
  std::size_t max_depth = 4;
  std::size_t max_branches = 4096;
  std::uint64_t max_assignments = std::uint64_t{1} << 26;
  std::size_t max_fibers = 16;
  std::size_t max_ladder_depth = 64;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

}  // namespace phiset
