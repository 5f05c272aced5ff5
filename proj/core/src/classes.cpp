#include "phiset/classes.hpp"

#include <algorithm>
#include <map>

#include "phiset/errors.hpp"

namespace phiset {

namespace {

void sort_unique(std::vector<Bits>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Prefix trie of a base. Node 0 is the empty prefix.
struct Trie {
  struct Node {
    bool branch_end = false;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;

  explicit Trie(const Base& base) {
    nodes.emplace_back();
    std::map<Word, std::size_t> id;
    id[Word{}] = 0;
    for (const Word& w : base.prefix_indices()) {  // length-lex: parents first
      const std::size_t node = nodes.size();
      nodes.emplace_back();
      id[w] = node;
      const Word parent(w.begin(), w.end() - 1);
      nodes[id.at(parent)].children.push_back(node);
    }
    for (const Word& b : base.branches()) nodes[id.at(b)].branch_end = true;
  }
};

// Achievable values of every subtree, bottom-up. Subtrees use disjoint index
// sets, so the choices at different nodes are independent.
//
//   primal: val(p) = A_p ∩ ([p ∈ S] X ∪ ⋃_c val(c))
//   dual:   val(p) = A_p ∪ (p ∈ S ? ∅ : ⋂_c val(c))
std::vector<Bits> prefix_values(const Trie& trie, std::size_t node, const std::vector<Bits>& gens,
                                Bits universe, bool dual) {
  const auto& nd = trie.nodes[node];
  std::vector<Bits> combined;
  if (!dual) {
    combined.push_back(nd.branch_end ? universe : 0);
    for (std::size_t c : nd.children) {
      const std::vector<Bits> child = prefix_values(trie, c, gens, universe, dual);
      std::vector<Bits> next;
      next.reserve(combined.size() * child.size());
      for (Bits w : combined)
        for (Bits v : child) next.push_back(w | v);
      sort_unique(next);
      combined = std::move(next);
    }
  } else if (nd.branch_end) {
    combined.push_back(0);
  } else {
    combined.push_back(universe);
    for (std::size_t c : nd.children) {
      const std::vector<Bits> child = prefix_values(trie, c, gens, universe, dual);
      std::vector<Bits> next;
      next.reserve(combined.size() * child.size());
      for (Bits w : combined)
        for (Bits v : child) next.push_back(w & v);
      sort_unique(next);
      combined = std::move(next);
    }
  }
  if (node == 0) return combined;  // the empty prefix is fixed to the universe
  std::vector<Bits> out;
  out.reserve(gens.size() * combined.size());
  for (Bits g : gens)
    for (Bits w : combined) out.push_back(dual ? (g | w) : (g & w));
  sort_unique(out);
  return out;
}

SetClass generate(const Base& base, const SetClass& generators, EvalMode mode, const Limits& limits,
                  bool dual) {
  if (generators.empty()) throw InputError("generate_class needs at least one generator");
  const std::uint64_t count = assignment_count(base, mode, generators.size());
  if (count > limits.max_assignments) {
    throw ResourceError("generating the class needs " + std::to_string(count) +
                        " assignments, cap is " + std::to_string(limits.max_assignments));
  }
  const std::size_t n = generators.universe_size();
  const Bits universe = full_bits(n);
  std::vector<Bits> gens;
  for (const auto& g : generators) gens.push_back(g.bits());

  std::vector<Bits> values;
  if (mode == EvalMode::prefix) {
    values = prefix_values(Trie(base), 0, gens, universe, dual);
  } else {
    // Range mode enumerates assignments; the dual value is X ∖ Φ(complements).
    if (dual) {
      for (Bits& g : gens) g = universe & ~g;
    }
    const CompiledBase compiled(base, EvalMode::range);
    const std::size_t k = compiled.slot_count();
    std::vector<std::size_t> choice(k, 0);
    std::vector<Bits> slots(k, gens.front());
    while (true) {
      const Bits v = compiled.evaluate(slots, universe);
      values.push_back(dual ? universe & ~v : v);
      std::size_t i = k;
      while (i > 0 && choice[i - 1] + 1 == gens.size()) {
        choice[i - 1] = 0;
        slots[i - 1] = gens.front();
        --i;
      }
      if (i == 0) break;
      ++choice[i - 1];
      slots[i - 1] = gens[choice[i - 1]];
    }
    sort_unique(values);
  }
  return SetClass::from_bits(n, values);
}

}  // namespace

std::uint64_t assignment_count(const Base& base, EvalMode mode, std::size_t generator_count) {
  const std::size_t indices =
      mode == EvalMode::prefix ? base.prefix_indices().size() : base.symbols().size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < indices; ++i) {
    if (generator_count != 0 && count > ~std::uint64_t{0} / generator_count) return ~std::uint64_t{0};
    count *= generator_count;
  }
  return count;
}

SetClass generate_class(const Base& base, const SetClass& generators, EvalMode mode,
                        const Limits& limits) {
  return generate(base, generators, mode, limits, false);
}

SetClass generate_dual_class(const Base& base, const SetClass& generators, EvalMode mode,
                             const Limits& limits) {
  return generate(base, generators, mode, limits, true);
}

SetClass complement_class(const SetClass& cls) {
  std::vector<SubsetMask> out;
  out.reserve(cls.size());
  for (const auto& m : cls) out.push_back(m.complement());
  return {cls.universe_size(), std::move(out)};
}

SetClass delta_class(const SetClass& cls) {
  std::vector<SubsetMask> out;
  for (const auto& m : cls) {
    if (cls.contains(m.complement())) out.push_back(m);
  }
  return {cls.universe_size(), std::move(out)};
}

SetClass restrict_class(const SetClass& cls, const SubsetMask& carrier) {
  if (carrier.universe_size() != cls.universe_size()) {
    throw InputError("carrier " + carrier.to_string() + " does not live in the class universe");
  }
  const std::vector<std::size_t> points = carrier.points();
  std::vector<SubsetMask> out;
  for (const auto& m : cls) {
    Bits local = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (m.contains(points[i])) local |= Bits{1} << i;
    }
    out.emplace_back(points.size(), local);
  }
  return {points.size(), std::move(out)};
}

bool ReductionWitness::valid() const {
  return c.subset_of(a) && d.subset_of(b) && c.disjoint_from(d) && (c | d) == (a | b);
}

bool SeparationWitness::separates() const { return a.subset_of(c) && b.disjoint_from(c); }

bool SeparationWitness::valid(const SetClass& cls) const {
  return separates() && cls.contains(c) && cls.contains(c.complement());
}

std::optional<ReductionWitness> find_reduction(const SetClass& cls, const SubsetMask& a,
                                               const SubsetMask& b) {
  // C ∩ D = ∅ and C ∪ D = A ∪ B force D = (A ∪ B) ∖ C.
  const SubsetMask u = a | b;
  for (const auto& c : cls) {
    if (!c.subset_of(a)) continue;
    const SubsetMask d = u - c;
    if (d.subset_of(b) && cls.contains(d)) return ReductionWitness{a, b, c, d};
  }
  return std::nullopt;
}

std::optional<SeparationWitness> find_separation(const SetClass& delta, const SubsetMask& a,
                                                 const SubsetMask& b) {
  for (const auto& c : delta) {
    if (a.subset_of(c) && b.disjoint_from(c)) return SeparationWitness{a, b, c};
  }
  return std::nullopt;
}

ReductionCheck check_reduction(const SetClass& cls) {
  if (cls.empty()) throw InputError("reduction check on an empty class");
  ReductionCheck out;
  out.witnesses.reserve(cls.size() * cls.size());
  for (const auto& a : cls) {
    for (const auto& b : cls) {
      auto w = find_reduction(cls, a, b);
      if (!w) {
        out.failing_pair = std::make_pair(a, b);
        return out;
      }
      out.witnesses.push_back(*w);
    }
  }
  out.holds = true;
  return out;
}

SeparationCheck check_separation(const SetClass& cls) {
  if (cls.empty()) throw InputError("separation check on an empty class");
  const SetClass delta = delta_class(cls);
  SeparationCheck out;
  for (const auto& a : cls) {
    for (const auto& b : cls) {
      if (!a.disjoint_from(b)) continue;
      auto w = find_separation(delta, a, b);
      if (!w) {
        out.failing_pair = std::make_pair(a, b);
        return out;
      }
      out.witnesses.push_back(*w);
    }
  }
  out.holds = true;
  return out;
}

SeparationWitness reduction_to_separation(const SetClass& cls, const SubsetMask& a,
                                          const SubsetMask& b) {
  if (a.universe_size() != cls.universe_size() || b.universe_size() != cls.universe_size()) {
    throw InputError("separation inputs live in the wrong universe");
  }
  if (!cls.contains(a.complement()) || !cls.contains(b.complement())) {
    throw PreconditionError("inputs must be complements of class members");
  }
  if (!a.disjoint_from(b)) throw PreconditionError("inputs " + a.to_string() + ", " + b.to_string() + " are not disjoint");
  auto reduced = find_reduction(cls, a.complement(), b.complement());
  if (!reduced) {
    throw PreconditionError("the complement pair " + a.complement().to_string() + ", " +
                            b.complement().to_string() + " cannot be reduced in the class");
  }
  // C ∪ D = X and C ∩ D = ∅, so D = X ∖ C; A misses C, B misses D.
  return SeparationWitness{a, b, reduced->d};
}

SetClass union_closure(const SetClass& cls) {
  std::vector<Bits> members;
  for (const auto& m : cls) members.push_back(m.bits());
  sort_unique(members);
  std::vector<Bits> frontier = members;
  while (!frontier.empty()) {
    std::vector<Bits> fresh;
    for (Bits f : frontier) {
      for (Bits m : members) {
        const Bits u = f | m;
        if (!std::binary_search(members.begin(), members.end(), u)) fresh.push_back(u);
      }
    }
    sort_unique(fresh);
    std::vector<Bits> merged;
    std::merge(members.begin(), members.end(), fresh.begin(), fresh.end(), std::back_inserter(merged));
    sort_unique(merged);
    members = std::move(merged);
    frontier = std::move(fresh);
  }
  return SetClass::from_bits(cls.universe_size(), members);
}

BorelLadder borel_ladder(const SetClass& generators, std::size_t depth, const Limits& limits) {
  if (depth == 0) throw InputError("Borel ladder depth must be at least 1");
  if (depth > limits.max_ladder_depth) {
    throw ResourceError("Borel ladder depth " + std::to_string(depth) + " exceeds the cap of " +
                        std::to_string(limits.max_ladder_depth));
  }
  auto make_level = [](SetClass sigma) {
    SetClass pi = complement_class(sigma);
    std::vector<SubsetMask> both;
    for (const auto& m : sigma) {
      if (pi.contains(m)) both.push_back(m);
    }
    SetClass delta(sigma.universe_size(), std::move(both));
    return BorelLevel{std::move(sigma), std::move(pi), std::move(delta)};
  };

  BorelLadder ladder;
  ladder.levels.push_back(make_level(union_closure(generators)));
  SetClass pool = ladder.levels.back().pi;
  while (true) {
    BorelLevel next = make_level(union_closure(pool));
    if (next.sigma == ladder.levels.back().sigma) {
      ladder.stabilized = true;
      break;
    }
    if (ladder.levels.size() == depth) break;
    pool = pool.merged(next.pi);
    ladder.levels.push_back(std::move(next));
  }
  return ladder;
}

}  // namespace phiset
