#include "phiset/finspace.hpp"

#include <algorithm>
#include <numeric>

#include "phiset/errors.hpp"

namespace phiset {

namespace {

void check_point_cap(std::size_t n, const Limits& limits) {
  if (n > limits.max_points || n > 20) {
    throw ResourceError("space of " + std::to_string(n) + " points exceeds the cap of " +
                        std::to_string(std::min<std::size_t>(limits.max_points, 20)));
  }
}

}  // namespace

FinSpace FinSpace::build(std::size_t n, std::vector<SubsetMask> nbhd, const Limits& limits) {
  check_point_cap(n, limits);
  std::vector<Bits> u(n);
  for (std::size_t x = 0; x < n; ++x) u[x] = nbhd[x].bits();

  std::vector<SubsetMask> opens;
  const Bits top = full_bits(n);
  for (Bits s = 0;; ++s) {
    bool open = true;
    for (Bits rest = s; rest != 0 && open; rest &= rest - 1) {
      const auto x = static_cast<std::size_t>(std::countr_zero(rest));
      open = (u[x] & ~s) == 0;
    }
    if (open) opens.emplace_back(n, s);
    if (s == top) break;
  }
  std::sort(opens.begin(), opens.end(), CanonicalLess{});
  return FinSpace(n, std::move(nbhd), std::move(opens));
}

FinSpace FinSpace::generate(std::size_t n, std::span<const SubsetMask> subbasis,
                            const Limits& limits) {
  check_point_cap(n, limits);
  for (const auto& b : subbasis) {
    if (b.universe_size() != n) {
      throw InputError("subbasis element " + b.to_string() + " has universe size " +
                       std::to_string(b.universe_size()) + ", expected " + std::to_string(n));
    }
  }
  std::vector<SubsetMask> nbhd;
  nbhd.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    Bits u = full_bits(n);
    for (const auto& b : subbasis) {
      if (b.contains(x)) u &= b.bits();
    }
    nbhd.emplace_back(n, u);
  }
  return build(n, std::move(nbhd), limits);
}

FinSpace FinSpace::from_opens(std::size_t n, std::span<const SubsetMask> opens,
                              const Limits& limits) {
  FinSpace space = generate(n, opens, limits);
  SetClass given(n, std::vector<SubsetMask>(opens.begin(), opens.end()));
  if (given.members() != space.opens()) {
    for (const auto& o : space.opens()) {
      if (!given.contains(o)) {
        throw InputError("open sets are not a topology: " + o.to_string() +
                         " is forced by union/intersection closure but missing");
      }
    }
  }
  return space;
}

FinSpace FinSpace::from_neighbourhoods(std::vector<SubsetMask> neighbourhoods,
                                       const Limits& limits) {
  const std::size_t n = neighbourhoods.size();
  check_point_cap(n, limits);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& u = neighbourhoods[x];
    if (u.universe_size() != n) throw InputError("neighbourhood has the wrong universe");
    if (!u.contains(x)) {
      throw InputError("neighbourhood of point " + std::to_string(x) + " does not contain it");
    }
    for (std::size_t y : u.points()) {
      if (!neighbourhoods[y].subset_of(u)) {
        throw InputError("neighbourhoods are not transitive at points " + std::to_string(x) +
                         ", " + std::to_string(y));
      }
    }
  }
  return build(n, std::move(neighbourhoods), limits);
}

FinSpace FinSpace::discrete(std::size_t n) {
  std::vector<SubsetMask> nbhd;
  for (std::size_t x = 0; x < n; ++x) nbhd.push_back(SubsetMask::singleton(n, x));
  return build(n, std::move(nbhd), default_limits());
}

FinSpace FinSpace::indiscrete(std::size_t n) {
  return build(n, std::vector<SubsetMask>(n, SubsetMask::full(n)), default_limits());
}

FinSpace FinSpace::sierpinski() {
  return build(2, {SubsetMask::of(2, {0}), SubsetMask::full(2)}, default_limits());
}

const SubsetMask& FinSpace::minimal_neighbourhood(std::size_t point) const {
  if (point >= n_) throw InputError("point " + std::to_string(point) + " outside the space");
  return nbhd_[point];
}

bool FinSpace::is_open(const SubsetMask& set) const {
  if (set.universe_size() != n_) return false;
  for (std::size_t x : set.points()) {
    if (!nbhd_[x].subset_of(set)) return false;
  }
  return true;
}

bool FinSpace::is_discrete() const {
  return std::all_of(nbhd_.begin(), nbhd_.end(), [](const SubsetMask& u) { return u.count() == 1; });
}

bool FinSpace::is_t1() const {
  for (std::size_t x = 0; x < n_; ++x) {
    if (!is_closed(SubsetMask::singleton(n_, x))) return false;
  }
  return true;
}

SetClass open_sets(const FinSpace& space) { return SetClass(space.size(), space.opens()); }

SetClass closed_sets(const FinSpace& space) {
  std::vector<SubsetMask> closed;
  closed.reserve(space.opens().size());
  for (const auto& o : space.opens()) closed.push_back(o.complement());
  return {space.size(), std::move(closed)};
}

Partition components(const FinSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y : space.minimal_neighbourhood(x).points()) parent[find(y)] = find(x);
  }
  std::vector<Bits> block_bits(n, 0);
  for (std::size_t x = 0; x < n; ++x) block_bits[find(x)] |= Bits{1} << x;
  std::vector<SubsetMask> blocks;
  for (Bits b : block_bits) {
    if (b != 0) blocks.emplace_back(n, b);
  }
  return {n, std::move(blocks)};
}

SetClass zero_sets(const FinSpace& space) {
  const Partition comps = components(space);
  const std::size_t c = comps.size();
  std::vector<SubsetMask> out;
  out.reserve(std::size_t{1} << c);
  for (Bits choice = 0; choice < (Bits{1} << c); ++choice) {
    Bits set = 0;
    for (std::size_t i = 0; i < c; ++i) {
      if ((choice >> i) & 1U) set |= comps.blocks()[i].bits();
    }
    out.emplace_back(space.size(), set);
  }
  return {space.size(), std::move(out)};
}

SubsetMask Subspace::restrict(const SubsetMask& ambient) const {
  if (ambient.universe_size() != carrier.universe_size()) {
    throw InputError("restricting a set from a different universe");
  }
  Bits local = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (ambient.contains(points[i])) local |= Bits{1} << i;
  }
  return {points.size(), local};
}

SubsetMask Subspace::lift(const SubsetMask& local) const {
  if (local.universe_size() != points.size()) throw InputError("lifting a set of the wrong universe");
  Bits ambient = 0;
  for (std::size_t i : local.points()) ambient |= Bits{1} << points[i];
  return {carrier.universe_size(), ambient};
}

Subspace subspace(const FinSpace& space, const SubsetMask& carrier) {
  if (carrier.universe_size() != space.size()) {
    throw InputError("carrier " + carrier.to_string() + " is over " +
                     std::to_string(carrier.universe_size()) + " points, space has " +
                     std::to_string(space.size()));
  }
  Subspace sub{FinSpace::discrete(0), carrier, carrier.points()};
  std::vector<SubsetMask> nbhd;
  nbhd.reserve(sub.points.size());
  for (std::size_t p : sub.points) nbhd.push_back(sub.restrict(space.minimal_neighbourhood(p)));
  sub.space = FinSpace::from_neighbourhoods(std::move(nbhd));
  return sub;
}

ProductCodec::ProductCodec(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
  size_ = 1;
  for (std::size_t r : radices_) {
    if (r == 0) throw InputError("product factor with no points");
    size_ *= r;
  }
}

std::size_t ProductCodec::encode(std::span<const std::size_t> tuple) const {
  if (tuple.size() != radices_.size()) throw InputError("tuple arity does not match the product");
  std::size_t index = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= radices_[k]) throw InputError("tuple coordinate out of range");
    index = index * radices_[k] + tuple[k];
  }
  return index;
}

std::vector<std::size_t> ProductCodec::decode(std::size_t index) const {
  if (index >= size_) throw InputError("product index out of range");
  std::vector<std::size_t> tuple(radices_.size());
  for (std::size_t k = radices_.size(); k-- > 0;) {
    tuple[k] = index % radices_[k];
    index /= radices_[k];
  }
  return tuple;
}

ProductSpace product(std::span<const FinSpace> factors, const Limits& limits) {
  if (factors.empty()) throw InputError("product of an empty list of spaces");
  std::vector<std::size_t> radices;
  std::size_t total = 1;
  for (const auto& f : factors) {
    radices.push_back(f.size());
    total *= f.size();
    if (total > limits.max_points) {
      throw ResourceError("product space exceeds the cap of " + std::to_string(limits.max_points) +
                          " points");
    }
  }
  ProductCodec codec(std::move(radices));
  std::vector<std::vector<std::size_t>> tuples(total);
  for (std::size_t i = 0; i < total; ++i) tuples[i] = codec.decode(i);

  // The minimal neighbourhood of a tuple is the box of the factors' minimal neighbourhoods.
  std::vector<SubsetMask> nbhd;
  nbhd.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    Bits box = 0;
    for (std::size_t j = 0; j < total; ++j) {
      bool inside = true;
      for (std::size_t k = 0; k < factors.size() && inside; ++k) {
        inside = factors[k].minimal_neighbourhood(tuples[i][k]).contains(tuples[j][k]);
      }
      if (inside) box |= Bits{1} << j;
    }
    nbhd.emplace_back(total, box);
  }
  return {FinSpace::from_neighbourhoods(std::move(nbhd), limits), std::move(codec)};
}

std::vector<FinSpace> all_topologies(std::size_t n) {
  if (n > 5) throw ResourceError("topology enumeration is capped at 5 points");
  std::vector<std::pair<std::size_t, std::size_t>> off_diagonal;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) off_diagonal.emplace_back(x, y);
    }
  }
  std::vector<FinSpace> out;
  const std::size_t relations = std::size_t{1} << off_diagonal.size();
  for (std::size_t r = 0; r < relations; ++r) {
    // y in U_x  <=>  (x, y) related.
    std::vector<Bits> u(n);
    for (std::size_t x = 0; x < n; ++x) u[x] = Bits{1} << x;
    for (std::size_t k = 0; k < off_diagonal.size(); ++k) {
      if ((r >> k) & 1U) u[off_diagonal[k].first] |= Bits{1} << off_diagonal[k].second;
    }
    bool transitive = true;
    for (std::size_t x = 0; x < n && transitive; ++x) {
      for (Bits rest = u[x]; rest != 0 && transitive; rest &= rest - 1) {
        const auto y = static_cast<std::size_t>(std::countr_zero(rest));
        transitive = (u[y] & ~u[x]) == 0;
      }
    }
    if (!transitive) continue;
    std::vector<SubsetMask> nbhd;
    for (std::size_t x = 0; x < n; ++x) nbhd.emplace_back(n, u[x]);
    out.push_back(FinSpace::from_neighbourhoods(std::move(nbhd)));
  }
  return out;
}

}  // namespace phiset
