#include "phiset/set_class.hpp"

#include <algorithm>

#include "phiset/errors.hpp"

namespace phiset {

SetClass::SetClass(std::size_t universe, std::vector<SubsetMask> members)
    : universe_(universe), members_(std::move(members)) {
  for (const auto& m : members_) {
    if (m.universe_size() != universe) {
      throw InputError("class member " + m.to_string() + " lives in a universe of size " +
                       std::to_string(m.universe_size()) + ", expected " + std::to_string(universe));
    }
  }
  std::sort(members_.begin(), members_.end(), CanonicalLess{});
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SetClass SetClass::from_bits(std::size_t universe, const std::vector<Bits>& bits) {
  std::vector<SubsetMask> members;
  members.reserve(bits.size());
  for (Bits b : bits) members.emplace_back(universe, b);
  return {universe, std::move(members)};
}

SetClass SetClass::power_set(std::size_t universe) {
  if (universe > 20) throw InputError("power set of more than 20 points requested");
  std::vector<SubsetMask> members;
  members.reserve(std::size_t{1} << universe);
  for (Bits b = 0; b <= full_bits(universe); ++b) members.emplace_back(universe, b);
  return {universe, std::move(members)};
}

bool SetClass::contains(const SubsetMask& mask) const {
  if (mask.universe_size() != universe_) return false;
  return std::binary_search(members_.begin(), members_.end(), mask, CanonicalLess{});
}

bool SetClass::subset_of(const SetClass& other) const {
  if (universe_ != other.universe_) return members_.empty();
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end(), CanonicalLess{});
}

SetClass SetClass::difference(const SetClass& other) const {
  std::vector<SubsetMask> out;
  for (const auto& m : members_) {
    if (!other.contains(m)) out.push_back(m);
  }
  return {universe_, std::move(out)};
}

SetClass SetClass::merged(const SetClass& other) const {
  if (universe_ != other.universe_) throw InputError("merging classes over different universes");
  std::vector<SubsetMask> out = members_;
  out.insert(out.end(), other.members_.begin(), other.members_.end());
  return {universe_, std::move(out)};
}

std::string SetClass::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ", ";
    s += members_[i].to_string();
  }
  return s + "}";
}

}  // namespace phiset
