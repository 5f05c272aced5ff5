#include "phiset/maps.hpp"

#include <algorithm>

#include "phiset/errors.hpp"

namespace phiset {

PointMap::PointMap(FinSpace dom, FinSpace cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) {
    throw InputError("map table has " + std::to_string(table_.size()) + " entries, domain has " +
                     std::to_string(dom_.size()) + " points");
  }
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] >= cod_.size()) {
      throw InputError("map sends point " + std::to_string(x) + " to " + std::to_string(table_[x]) +
                       ", outside a codomain of " + std::to_string(cod_.size()) + " points");
    }
  }
}

PointMap PointMap::identity(const FinSpace& space) {
  std::vector<std::size_t> table(space.size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = x;
  return {space, space, std::move(table)};
}

PointMap PointMap::constant(const FinSpace& dom, const FinSpace& cod, std::size_t value) {
  return {dom, cod, std::vector<std::size_t>(dom.size(), value)};
}

SubsetMask PointMap::image(const SubsetMask& a) const {
  if (a.universe_size() != dom_.size()) throw InputError("image of a set outside the domain universe");
  Bits out = 0;
  for (std::size_t x : a.points()) out |= Bits{1} << table_[x];
  return {cod_.size(), out};
}

SubsetMask PointMap::preimage(const SubsetMask& b) const {
  if (b.universe_size() != cod_.size()) throw InputError("preimage of a set outside the codomain universe");
  Bits out = 0;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (b.contains(table_[x])) out |= Bits{1} << x;
  }
  return {dom_.size(), out};
}

Partition kernel(const PointMap& f) {
  std::vector<SubsetMask> fibers;
  for (std::size_t y : f.range().points()) fibers.push_back(f.preimage(SubsetMask::singleton(f.cod().size(), y)));
  return {f.dom().size(), std::move(fibers)};
}

bool alg_contains(const PointMap& f, const SubsetMask& a) { return f.saturation(a) == a; }

SetClass alg_enumerate(const PointMap& f, const Limits& limits) {
  const Partition ker = kernel(f);
  if (ker.size() > limits.max_fibers) {
    throw ResourceError("map has " + std::to_string(ker.size()) + " fibers, cap is " +
                        std::to_string(limits.max_fibers));
  }
  std::vector<SubsetMask> out;
  const std::size_t n = f.dom().size();
  for (Bits choice = 0; choice < (Bits{1} << ker.size()); ++choice) {
    Bits set = 0;
    for (std::size_t i = 0; i < ker.size(); ++i) {
      if ((choice >> i) & 1U) set |= ker.blocks()[i].bits();
    }
    out.emplace_back(n, set);
  }
  return {n, std::move(out)};
}

SetClass preimage_class(const PointMap& f, const SetClass& cls) {
  if (cls.universe_size() != f.cod().size()) throw InputError("preimage of a class over the wrong universe");
  std::vector<SubsetMask> out;
  for (const auto& b : cls) out.push_back(f.preimage(b));
  return {f.dom().size(), std::move(out)};
}

SetClass image_class(const PointMap& f, const SetClass& cls) {
  if (cls.universe_size() != f.dom().size()) throw InputError("image of a class over the wrong universe");
  std::vector<SubsetMask> out;
  for (const auto& a : cls) out.push_back(f.image(a));
  return {f.cod().size(), std::move(out)};
}

IndexedFamily preimage_family(const PointMap& f, const IndexedFamily& family) {
  if (family.universe_size() != f.cod().size()) throw InputError("preimage of a family over the wrong universe");
  return family.transformed(f.dom().size(), [&](const SubsetMask& m) { return f.preimage(m); });
}

IndexedFamily image_family(const PointMap& f, const IndexedFamily& family) {
  if (family.universe_size() != f.dom().size()) throw InputError("image of a family over the wrong universe");
  return family.transformed(f.cod().size(), [&](const SubsetMask& m) { return f.image(m); });
}

DiagonalProduct diagonal_product(std::span<const PointMap> maps, const Limits& limits) {
  if (maps.empty()) throw InputError("diagonal product of an empty list of maps");
  const FinSpace& dom = maps.front().dom();
  std::vector<FinSpace> cods;
  for (const auto& m : maps) {
    if (!(m.dom() == dom)) throw InputError("diagonal product factors must share their domain");
    cods.push_back(m.cod());
  }
  ProductSpace prod = product(cods, limits);
  std::vector<std::size_t> table(dom.size());
  std::vector<std::size_t> tuple(maps.size());
  for (std::size_t x = 0; x < dom.size(); ++x) {
    for (std::size_t i = 0; i < maps.size(); ++i) tuple[i] = maps[i](x);
    table[x] = prod.codec.encode(tuple);
  }
  return {PointMap(dom, std::move(prod.space), std::move(table)), std::move(prod.codec)};
}

MapProps map_properties(const PointMap& f) {
  MapProps p;
  const FinSpace& dom = f.dom();
  const FinSpace& cod = f.cod();
  p.continuous = std::all_of(cod.opens().begin(), cod.opens().end(),
                             [&](const SubsetMask& o) { return dom.is_open(f.preimage(o)); });
  p.open_map = std::all_of(dom.opens().begin(), dom.opens().end(),
                           [&](const SubsetMask& o) { return cod.is_open(f.image(o)); });
  p.closed_map = std::all_of(dom.opens().begin(), dom.opens().end(),
                             [&](const SubsetMask& o) { return cod.is_closed(f.image(o.complement())); });
  const Partition ker = kernel(f);
  p.fibers_closed = std::all_of(ker.blocks().begin(), ker.blocks().end(),
                                [&](const SubsetMask& b) { return dom.is_closed(b); });
  p.surjective = f.range().is_full();
  p.injective = ker.size() == dom.size();
  p.empty_fibers_dropped = !p.surjective;
  return p;
}

IndexOrder IndexOrder::from_relation(std::size_t size,
                                     std::span<const std::pair<std::size_t, std::size_t>> le) {
  if (size == 0) throw InputError("index order must have at least one index");
  if (size > kMaxUniverse) throw InputError("index order too large");
  IndexOrder order;
  order.size_ = size;
  order.above_.assign(size, 0);
  for (std::size_t i = 0; i < size; ++i) order.above_[i] = Bits{1} << i;
  for (const auto& [i, j] : le) {
    if (i >= size || j >= size) {
      throw InputError("order relation mentions index " + std::to_string(std::max(i, j)) +
                       " outside 0.." + std::to_string(size - 1));
    }
    order.above_[i] |= Bits{1} << j;
  }
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      if (order.le(i, k)) order.above_[i] |= order.above_[k];
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if (order.le(i, j) && order.le(j, i)) {
        throw InputError("order relation is not antisymmetric: " + std::to_string(i) + " and " +
                         std::to_string(j) + " are mutually below each other");
      }
    }
  }
  return order;
}

IndexOrder IndexOrder::chain(std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> le;
  for (std::size_t i = 0; i + 1 < size; ++i) le.emplace_back(i, i + 1);
  return from_relation(size, le);
}

bool IndexOrder::directed() const {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      if ((above_[i] & above_[j]) == 0) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> IndexOrder::strict_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      if (i != j && le(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

DirectedImageCheck directed_image_check(const PointMap& f, const IndexOrder& order,
                                        std::span<const SubsetMask> family) {
  if (family.size() != order.size()) {
    throw InputError("family has " + std::to_string(family.size()) + " sets for " +
                     std::to_string(order.size()) + " indices");
  }
  DirectedImageCheck out;
  out.directed = order.directed();
  out.decreasing = true;
  for (const auto& [i, j] : order.strict_pairs()) {
    if (!family[j].subset_of(family[i])) out.decreasing = false;
  }
  SubsetMask meet = f.dom().universe();
  SubsetMask image_meet = f.cod().universe();
  for (const auto& a : family) {
    meet = meet & a;
    image_meet = image_meet & f.image(a);
  }
  out.image_of_intersection = f.image(meet);
  out.intersection_of_images = image_meet;
  out.equal = out.image_of_intersection == out.intersection_of_images;
  return out;
}

ImageEvalCheck image_eval_check(const PointMap& f, const Base& base, const IndexedFamily& family) {
  if (family.kind() != EvalMode::prefix) throw ModeError("image_eval_check expects a prefix-mode family");
  ImageEvalCheck out;
  const std::vector<Word> indices = base.prefix_indices();
  out.decreasing = is_decreasing(family, indices);
  out.image_of_eval = f.image(eval(base, family, EvalMode::prefix));
  out.eval_of_images = eval(base, image_family(f, family), EvalMode::prefix);
  out.equal = out.image_of_eval == out.eval_of_images;
  return out;
}

}  // namespace phiset
