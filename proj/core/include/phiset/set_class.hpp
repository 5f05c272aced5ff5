#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "phiset/subset_mask.hpp"

namespace phiset {

/// A deduplicated collection of subsets of one universe, kept in canonical
/// order so that iteration (and therefore witness selection) is reproducible.
class SetClass {
 public:
  SetClass() = default;
  explicit SetClass(std::size_t universe) : universe_(universe) {}
  SetClass(std::size_t universe, std::vector<SubsetMask> members);
  SetClass(std::size_t universe, std::initializer_list<SubsetMask> members)
      : SetClass(universe, std::vector<SubsetMask>(members)) {}

  /// Build from raw bit words; bits outside the universe are rejected.
  static SetClass from_bits(std::size_t universe, const std::vector<Bits>& bits);
  static SetClass power_set(std::size_t universe);

  std::size_t universe_size() const { return universe_; }
  const std::vector<SubsetMask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(const SubsetMask& mask) const;
  /// Every member of this class is a member of `other`.
  bool subset_of(const SetClass& other) const;

  /// Members of this class that are not members of `other`.
  SetClass difference(const SetClass& other) const;
  SetClass merged(const SetClass& other) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  std::string to_string() const;

  friend bool operator==(const SetClass&, const SetClass&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<SubsetMask> members_;
};

}  // namespace phiset
