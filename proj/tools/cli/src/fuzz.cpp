#include "phiset_cli/fuzz.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace phiset::cli {

namespace {

using Rng = std::mt19937_64;

constexpr std::uint64_t kExhaustiveFamilies = std::uint64_t{1} << 20;

// ---------------------------------------------------------------------------
// Instance sources

std::size_t below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Rng make_rng(const FuzzBounds& b, const std::string& suite, std::size_t salt) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return Rng(b.seed ^ h ^ (salt * 0x9E3779B97F4A7C15ULL));
}

bool exhaustive(std::size_t n, const FuzzBounds& b) { return n <= b.exhaustive_points && n <= 5; }

std::vector<FinSpace> spaces_of_size(std::size_t n, const FuzzBounds& b, Rng& rng) {
  if (exhaustive(n, b)) return all_topologies(n);
  std::vector<FinSpace> out;
  for (std::size_t i = 0; i < b.budget; ++i) {
    std::vector<SubsetMask> sub;
    const std::size_t k = below(rng, n + 1);
    for (std::size_t j = 0; j < k; ++j) sub.emplace_back(n, rng() & full_bits(n));
    out.push_back(FinSpace::generate(n, sub));
  }
  return out;
}

// Tables dom -> cod in lexicographic order (first entry most significant).
std::vector<std::vector<std::size_t>> tables(std::size_t n, std::size_t m, const FuzzBounds& b, Rng& rng) {
  std::vector<std::vector<std::size_t>> out;
  if (exhaustive(n, b) && exhaustive(m, b)) {
    std::vector<std::size_t> t(n, 0);
    while (true) {
      out.push_back(t);
      std::size_t i = n;
      while (i > 0 && t[i - 1] + 1 == m) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
    return out;
  }
  for (std::size_t i = 0; i < b.budget; ++i) {
    std::vector<std::size_t> t(n);
    for (auto& v : t) v = below(rng, m);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Base> bases(const FuzzBounds& b, EvalMode hint, Rng& rng) {
  std::vector<Word> words;
  for (std::size_t len = 1; len <= b.depth; ++len) {
    for (std::uint64_t i = word_index(Word(len, 0), b.alphabet); word_at(i, b.alphabet).size() == len; ++i) {
      words.push_back(word_at(i, b.alphabet));
    }
  }
  std::vector<Base> out;
  const auto pick = [&](std::uint64_t choice) {
    std::vector<Word> branches;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if ((choice >> i) & 1U) branches.push_back(words[i]);
    }
    out.emplace_back(b.alphabet, std::move(branches), hint);
  };
  if (words.size() <= 8) {
    for (std::uint64_t c = 1; c < (std::uint64_t{1} << words.size()); ++c) pick(c);
  } else {
    for (std::size_t i = 0; i < b.budget; ++i) {
      std::vector<Word> branches;
      for (const Word& w : words) {
        if (rng() & 1U) branches.push_back(w);
      }
      if (branches.empty()) branches.push_back(words[below(rng, words.size())]);
      out.emplace_back(b.alphabet, std::move(branches), hint);
    }
  }
  return out;
}

// A small fixed set of bases for suites whose per-instance cost is high.
std::vector<Base> representative_bases(EvalMode hint) {
  return {Base(2, {{0}, {1}}, hint), Base(2, {{0, 1}}, hint), a_operation_base(2, 2),
          Base(2, {{0, 0}, {1}}, hint)};
}

// Every assignment of `values` to k slots, last slot fastest; sampled when
// there are too many.
template <typename Fn>
void for_each_assignment(std::size_t k, const std::vector<Bits>& values, const FuzzBounds& b, Rng& rng, Fn&& fn) {
  std::vector<Bits> slots(k);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k && count <= kExhaustiveFamilies; ++i) count *= values.size();
  if (count > kExhaustiveFamilies) {
    for (std::size_t s = 0; s < b.budget; ++s) {
      for (auto& v : slots) v = values[below(rng, values.size())];
      fn(std::span<const Bits>(slots));
    }
    return;
  }
  std::vector<std::size_t> choice(k, 0);
  for (std::size_t i = 0; i < k; ++i) slots[i] = values[0];
  while (true) {
    fn(std::span<const Bits>(slots));
    std::size_t i = k;
    while (i > 0 && choice[i - 1] + 1 == values.size()) {
      choice[i - 1] = 0;
      slots[i - 1] = values[0];
      --i;
    }
    if (i == 0) break;
    slots[i - 1] = values[++choice[i - 1]];
  }
}

// Families with A_w ⊆ A_parent(w) at every slot; parents come before children.
template <typename Fn>
void for_each_decreasing(const std::vector<std::ptrdiff_t>& parent, Bits top, const FuzzBounds& b, Rng& rng, Fn&& fn) {
  const std::size_t k = parent.size();
  std::vector<Bits> slots(k);
  const auto bound = [&](std::size_t i) { return parent[i] < 0 ? top : slots[static_cast<std::size_t>(parent[i])]; };
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k && count <= kExhaustiveFamilies; ++i) count *= top + 1;
  if (count > kExhaustiveFamilies) {
    for (std::size_t s = 0; s < b.budget; ++s) {
      for (std::size_t i = 0; i < k; ++i) slots[i] = rng() & bound(i);
      fn(std::span<const Bits>(slots));
    }
    return;
  }
  const std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == k) {
      fn(std::span<const Bits>(slots));
      return;
    }
    const Bits hi = bound(i);
    for (Bits s = 0;; s = (s - hi) & hi) {  // submasks of hi, ascending
      slots[i] = s;
      walk(i + 1);
      if (s == hi) break;
    }
  };
  walk(0);
}

std::vector<Bits> all_subsets(std::size_t n) {
  std::vector<Bits> out(std::size_t{1} << n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<Bits> bits_of(const SetClass& c) {
  std::vector<Bits> out;
  for (const auto& m : c) out.push_back(m.bits());
  return out;
}

IndexedFamily family_of(const CompiledBase& cb, std::span<const Bits> slots, std::size_t n) {
  IndexedFamily fam(cb.mode(), n);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (cb.mode() == EvalMode::prefix) {
      fam.set(cb.slot_words()[i], SubsetMask(n, slots[i]));
    } else {
      fam.set(cb.slot_symbols()[i], SubsetMask(n, slots[i]));
    }
  }
  return fam;
}

std::vector<Bits> image_table(const std::vector<std::size_t>& t) {
  std::vector<Bits> img(std::size_t{1} << t.size(), 0);
  for (std::size_t a = 0; a < img.size(); ++a) {
    for (std::size_t x = 0; x < t.size(); ++x) {
      if ((a >> x) & 1U) img[a] |= Bits{1} << t[x];
    }
  }
  return img;
}

std::vector<Bits> preimage_table(const std::vector<std::size_t>& t, std::size_t m) {
  std::vector<Bits> pre(std::size_t{1} << m, 0);
  for (std::size_t b = 0; b < pre.size(); ++b) {
    for (std::size_t x = 0; x < t.size(); ++x) {
      if ((b >> t[x]) & 1U) pre[b] |= Bits{1} << x;
    }
  }
  return pre;
}

// Finite posets on k indices, one per strict order, in enumeration order of
// the generating relation.
std::vector<IndexOrder> posets(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) candidates.emplace_back(i, j);
    }
  }
  std::vector<IndexOrder> out;
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << candidates.size()); ++c) {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if ((c >> i) & 1U) rel.push_back(candidates[i]);
    }
    try {
      IndexOrder o = IndexOrder::from_relation(k, rel);
      if (seen.insert(o.strict_pairs()).second) out.push_back(std::move(o));
    } catch (const InputError&) {
      // cyclic relation
    }
  }
  return out;
}

Json sets_json(std::span<const SubsetMask> sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(to_json(s));
  return out;
}

std::vector<SubsetMask> parse_set_list(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array of sets");
  std::vector<SubsetMask> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_set(j[i], n, path + "[" + std::to_string(i) + "]"));
  return out;
}

// ---------------------------------------------------------------------------
// Reference observations. Each takes a stored instance and returns what the
// engine's public API observes when the finding of the given kind is present.

using Observation = std::optional<Json>;

Observation observe_distributivity(const std::string& kind, const Json& in, const Limits& lim) {
  if (kind != "violation") return std::nullopt;
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const EvalMode mode = parse_mode(require(in, "mode", ""), "mode");
  const std::string identity = require(in, "identity", "").get<std::string>();
  if (identity == "class-restriction") {
    const SubsetMask carrier = parse_set(require(in, "carrier", ""), space.size(), "carrier");
    const SetClass opens = open_sets(space);
    const SetClass lhs = restrict_class(generate_class(base, opens, mode, lim), carrier);
    const SetClass rhs = generate_class(base, restrict_class(opens, carrier), mode, lim);
    if (lhs == rhs) return std::nullopt;
    return Json{{"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
  }
  const IndexedFamily fam = parse_family(require(in, "family", ""), mode, "family");
  SubsetMask lhs, rhs;
  if (identity == "distributivity") {
    const SubsetMask m = parse_set(require(in, "mask", ""), space.size(), "mask");
    lhs = eval(base, fam.intersected(m), mode);
    rhs = eval(base, fam, mode) & m;
  } else if (identity == "dual-distributivity") {
    const SubsetMask m = parse_set(require(in, "mask", ""), space.size(), "mask");
    lhs = dual_eval(base, fam.united(m), mode);
    rhs = dual_eval(base, fam, mode) | m;
  } else if (identity == "restriction") {
    const Subspace sub = subspace(space, parse_set(require(in, "carrier", ""), space.size(), "carrier"));
    lhs = eval(base, fam.transformed(sub.points.size(), [&](const SubsetMask& s) { return sub.restrict(s); }), mode);
    rhs = sub.restrict(eval(base, fam, mode));
  } else {
    throw InputError("identity: unknown identity \"" + identity + "\"");
  }
  if (lhs == rhs) return std::nullopt;
  return Json{{"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
}

Observation observe_preimage(const std::string& kind, const Json& in, const Limits& lim) {
  if (kind != "violation") return std::nullopt;
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const EvalMode mode = parse_mode(require(in, "mode", ""), "mode");
  const IndexedFamily fam = parse_family(require(in, "family", ""), mode, "family");
  const SubsetMask lhs = f.preimage(eval(base, fam, mode));
  const SubsetMask rhs = eval(base, preimage_family(f, fam), mode);
  if (lhs == rhs) return std::nullopt;
  return Json{{"preimage_of_eval", to_json(lhs)}, {"eval_of_preimages", to_json(rhs)}};
}

Observation observe_algebra(const std::string& kind, const Json& in, const Limits& lim) {
  if (kind != "violation") return std::nullopt;
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const SetClass alg = alg_enumerate(f, lim);
  const std::string check = require(in, "check", "").get<std::string>();
  if (check == "algebra") {
    std::vector<SubsetMask> brute;
    for (Bits a = 0; a <= full_bits(f.dom().size()); ++a) {
      const SubsetMask m(f.dom().size(), a);
      if (f.saturation(m) == m) brute.push_back(m);
    }
    const SetClass expected(f.dom().size(), brute);
    if (alg == expected) return std::nullopt;
    return Json{{"enumerated", to_json(alg)}, {"saturated", to_json(expected)}};
  }
  if (check == "cardinality") {
    const std::size_t fibers = kernel(f).size();
    if (alg.size() == (std::size_t{1} << fibers)) return std::nullopt;
    return Json{{"size", alg.size()}, {"fibers", fibers}};
  }
  if (check == "closure") {
    const Base base = parse_base(require(in, "base", ""), "base", lim);
    const EvalMode mode = parse_mode(require(in, "mode", ""), "mode");
    const SetClass escaped = generate_class(base, alg, mode, lim).difference(alg);
    if (escaped.empty()) return std::nullopt;
    return Json{{"escaped", to_json(escaped)}};
  }
  throw InputError("check: unknown check \"" + check + "\"");
}

Observation observe_diag(const std::string& kind, const Json& in, const Limits& lim) {
  if (kind != "violation") return std::nullopt;
  if (in.contains("maps")) {
    std::vector<PointMap> maps;
    const Json& ms = in["maps"];
    for (std::size_t i = 0; i < ms.size(); ++i) maps.push_back(parse_map(ms[i], "maps[" + std::to_string(i) + "]", lim));
    if (maps.empty()) throw InputError("maps: expected at least one map");
    const SubsetMask a = parse_set(require(in, "set", ""), maps.front().dom().size(), "set");
    const DiagonalProduct d = diagonal_product(maps, lim);
    const bool in_factor = std::any_of(maps.begin(), maps.end(), [&](const PointMap& m) { return alg_contains(m, a); });
    if (!in_factor || alg_contains(d.map, a)) return std::nullopt;
    return Json{{"in_factor_algebra", true}, {"in_product_algebra", false}};
  }
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  const auto zeros = parse_set_list(require(in, "zeros", ""), space.size(), "zeros");
  const ZeroWitness w = zero_witness_map(space, zeros, lim);
  if (!in.contains("base")) {
    if (w.certified()) return std::nullopt;
    return Json{{"indicators_continuous", w.indicators_continuous}, {"in_algebra", w.in_algebra}};
  }
  const Base base = parse_base(in["base"], "base", lim);
  const EvalMode mode = parse_mode(require(in, "mode", ""), "mode");
  const SetClass escaped =
      generate_class(base, SetClass(space.size(), zeros), mode, lim).difference(alg_enumerate(w.product.map, lim));
  if (escaped.empty()) return std::nullopt;
  return Json{{"escaped", to_json(escaped)}};
}

Observation observe_directed(const std::string& kind, const Json& in, const Limits& lim) {
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const IndexOrder order = parse_order(require(in, "order", ""), "order");
  const auto fam = parse_set_list(require(in, "family", ""), f.dom().size(), "family");
  const DirectedImageCheck r = directed_image_check(f, order, fam);
  bool present = false;
  if (kind == "violation") present = r.hypotheses_hold() && !r.equal;
  else if (kind == "not-decreasing") present = r.directed && !r.decreasing && !r.equal;
  else if (kind == "not-directed") present = !r.directed && r.decreasing && !r.equal;
  if (!present) return std::nullopt;
  return Json{{"directed", r.directed},
              {"decreasing", r.decreasing},
              {"image_of_intersection", to_json(r.image_of_intersection)},
              {"intersection_of_images", to_json(r.intersection_of_images)}};
}

Observation observe_image_eval(const std::string& kind, const Json& in, const Limits& lim) {
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const IndexedFamily fam = parse_family(require(in, "family", ""), EvalMode::prefix, "family");
  const ImageEvalCheck r = image_eval_check(f, base, fam);
  bool present = false;
  if (kind == "violation") present = r.decreasing && !r.equal;
  else if (kind == "not-decreasing") present = !r.decreasing && !r.equal;
  if (!present) return std::nullopt;
  return Json{{"decreasing", r.decreasing},
              {"image_of_eval", to_json(r.image_of_eval)},
              {"eval_of_images", to_json(r.eval_of_images)}};
}

Observation observe_reduction(const std::string& kind, const Json& in, const Limits& lim) {
  if (kind != "violation") return std::nullopt;
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  const SetClass opens = open_sets(space);
  if (!check_reduction(opens).holds) return std::nullopt;
  const SetClass closed = closed_sets(space);
  const SeparationCheck sep = check_separation(closed);
  if (!sep.holds) {
    return Json{{"separation_fails_at", Json::array({to_json(sep.failing_pair->first), to_json(sep.failing_pair->second)})}};
  }
  for (const auto& a : closed) {
    for (const auto& b : closed) {
      if (!a.disjoint_from(b)) continue;
      const SeparationWitness w = reduction_to_separation(opens, a, b);
      if (!w.valid(closed)) {
        return Json{{"invalid_witness", Json::array({to_json(a), to_json(b), to_json(w.c)})}};
      }
    }
  }
  return std::nullopt;
}

Observation observe_transfer(const std::string& kind, const Json& in, const Limits& lim) {
  const Base base = parse_base(require(in, "base", ""), "base", lim);
  const EvalMode mode = parse_mode(require(in, "mode", ""), "mode");
  const Property which = property_from_string(require(in, "property", "").get<std::string>());
  if (kind == "identity-mismatch") {
    const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
    const SetClass gens = open_sets(space);
    const TransferReport r =
        transfer_property(PointMap::identity(space), base, gens, gens, mode, which, lim);
    const SetClass cls = generate_class(base, gens, mode, lim);
    const bool direct = which == Property::reduction ? check_reduction(cls).holds : check_separation(cls).holds;
    if (r.holds == direct) return std::nullopt;
    return Json{{"transfer", r.holds}, {"direct", direct}};
  }
  if (kind != "violation") return std::nullopt;
  const PointMap f = parse_map(require(in, "map", ""), "map", lim);
  const SetClass gx = parse_class(require(in, "generators_x", ""), "generators_x", lim);
  const SetClass gy = parse_class(require(in, "generators_y", ""), "generators_y", lim);
  const TransferReport r = transfer_property(f, base, gx, gy, mode, which, lim);
  if (!r.preserves_generators || !r.generators_in_algebra || !r.target_has_property || r.holds) return std::nullopt;
  Json bad = Json::array();
  for (const auto& s : r.steps) {
    if (!s.valid) bad.push_back(Json::array({to_json(s.a), to_json(s.b)}));
  }
  return Json{{"invalid_pairs", std::move(bad)}, {"unreduced_images", r.failures.size()}};
}

Observation observe_zerotych(const std::string& kind, const Json& in, const Limits& lim) {
  const FinSpace space = parse_space(require(in, "space", ""), "space", lim);
  const SubsetMask carrier = parse_set(require(in, "carrier", ""), space.size(), "carrier");
  const ZeroTraceGap g = zero_trace_gap(space, carrier);
  bool present = false;
  if (kind == "violation") present = !g.traces_included || (space.is_discrete() && !g.gap.empty());
  else if (kind == "gap") present = !g.gap.empty();
  if (!present) return std::nullopt;
  return Json{{"traces", to_json(g.traces)},
              {"intrinsic", to_json(g.intrinsic)},
              {"gap", to_json(g.gap)},
              {"lifted_gap", to_json(g.lifted_gap())}};
}

using Observer = Observation (*)(const std::string&, const Json&, const Limits&);

const std::map<std::string, Observer>& observers() {
  static const std::map<std::string, Observer> table{
      {"lemma2-distributivity", observe_distributivity}, {"lemma5-preimage", observe_preimage},
      {"lemma7-algebra", observe_algebra},        {"diag-product", observe_diag},
      {"prop11-image", observe_directed},          {"prop11-necessity", observe_directed},
      {"lemma12-image", observe_image_eval},        {"lemma1-reduction", observe_reduction},
      {"transfer", observe_transfer},            {"zerotych-traces", observe_zerotych},
      {"zerotych-gap", observe_zerotych},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Recording

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  // The fast path found something; confirm it through the public API and
  // keep the first occurrence of each kind.
  void violation(const Json& instance) { record("violation", instance, true); }
  void counterexample(const std::string& kind, const Json& instance) { record(kind, instance, false); }

  bool seen(const std::string& kind) const { return kinds_.count(kind) != 0; }

 private:
  void record(const std::string& kind, const Json& instance, bool is_violation) {
    (is_violation ? r_.violations : r_.counterexamples) += 1;
    if (!kinds_.insert(kind).second) return;
    const Observation obs = observers().at(r_.suite)(kind, instance, default_limits());
    if (!obs) throw std::logic_error(r_.suite + ": fast path and reference disagree on a " + kind + " instance");
    r_.findings.push_back(Json{{"suite", r_.suite}, {"kind", kind}, {"instance", instance}, {"observed", *obs}});
  }

  SuiteResult& r_;
  std::set<std::string> kinds_;
};

// ---------------------------------------------------------------------------
// Suites

SuiteResult distributivity(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "lemma2-distributivity";
  Recorder rec(r);
  Json topologies = Json::object();
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    Rng rng = make_rng(b, r.suite, n);
    const auto spaces = spaces_of_size(n, b, rng);
    topologies[std::to_string(n)] = spaces.size();
    const Bits X = full_bits(n);
    for (const FinSpace& space : spaces) {
      const SetClass opens = open_sets(space);
      const std::vector<Bits> values = bits_of(opens);
      std::vector<Subspace> subs;
      std::vector<std::vector<Bits>> local(X + 1);
      for (Bits k = 0; k <= X; ++k) {
        subs.push_back(subspace(space, SubsetMask(n, k)));
        local[k].resize(X + 1);
        for (Bits a = 0; a <= X; ++a) local[k][a] = subs[k].restrict(SubsetMask(n, a)).bits();
      }
      for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
        for (const Base& base : bases(b, mode, rng)) {
          const CompiledBase cb(base, mode);
          const std::size_t k = cb.slot_count();
          std::vector<Bits> tmp(k);
          const auto instance = [&](std::span<const Bits> a, const char* identity) {
            return Json{{"space", to_json(space)}, {"base", to_json(base)}, {"mode", to_string(mode)},
                        {"family", to_json(family_of(cb, a, n))}, {"identity", identity}};
          };
          for_each_assignment(k, values, b, rng, [&](std::span<const Bits> a) {
            const Bits v = cb.evaluate(a, X);
            for (std::size_t i = 0; i < k; ++i) tmp[i] = X & ~a[i];
            const Bits d = X & ~cb.evaluate(tmp, X);
            for (Bits m = 0; m <= X; ++m) {
              for (std::size_t i = 0; i < k; ++i) tmp[i] = a[i] & m;
              if (cb.evaluate(tmp, X) != (v & m)) {
                Json in = instance(a, "distributivity");
                in["mask"] = to_json(SubsetMask(n, m));
                rec.violation(in);
              }
              for (std::size_t i = 0; i < k; ++i) tmp[i] = X & ~(a[i] | m);
              if ((X & ~cb.evaluate(tmp, X)) != (d | m)) {
                Json in = instance(a, "dual-distributivity");
                in["mask"] = to_json(SubsetMask(n, m));
                rec.violation(in);
              }
              r.checked += 2;
            }
            for (Bits c = 0; c <= X; ++c) {
              for (std::size_t i = 0; i < k; ++i) tmp[i] = local[c][a[i]];
              if (cb.evaluate(tmp, full_bits(subs[c].points.size())) != local[c][v]) {
                Json in = instance(a, "restriction");
                in["carrier"] = to_json(SubsetMask(n, c));
                rec.violation(in);
              }
              ++r.checked;
            }
          });
          for (Bits c = 0; c <= X; ++c) {
            const SubsetMask carrier(n, c);
            const SetClass lhs = restrict_class(generate_class(base, opens, mode), carrier);
            const SetClass rhs = generate_class(base, restrict_class(opens, carrier), mode);
            if (lhs != rhs) {
              rec.violation(Json{{"space", to_json(space)}, {"base", to_json(base)}, {"mode", to_string(mode)},
                                 {"identity", "class-restriction"}, {"carrier", to_json(carrier)}});
            }
            ++r.checked;
          }
        }
      }
    }
  }
  r.stats["topologies"] = std::move(topologies);
  return r;
}

SuiteResult preimage(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "lemma5-preimage";
  Recorder rec(r);
  std::uint64_t maps = 0;
  for (std::size_t m = 1; m <= b.max_points; ++m) {
    const Bits Y = full_bits(m);
    std::vector<std::vector<std::size_t>> ts;
    std::vector<std::vector<Bits>> pre;
    for (std::size_t n = 1; n <= b.max_points; ++n) {
      Rng rng = make_rng(b, r.suite, n * 64 + m);
      for (auto& t : tables(n, m, b, rng)) {
        pre.push_back(preimage_table(t, m));
        ts.push_back(std::move(t));
      }
    }
    maps += ts.size();
    Rng rng = make_rng(b, r.suite, m);
    const std::vector<Bits> values = all_subsets(m);
    for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
      for (const Base& base : bases(b, mode, rng)) {
        const CompiledBase cb(base, mode);
        std::vector<Bits> tmp(cb.slot_count());
        for_each_assignment(cb.slot_count(), values, b, rng, [&](std::span<const Bits> a) {
          const Bits v = cb.evaluate(a, Y);
          for (std::size_t t = 0; t < ts.size(); ++t) {
            for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = pre[t][a[i]];
            if (cb.evaluate(tmp, full_bits(ts[t].size())) != pre[t][v]) {
              const PointMap f(FinSpace::discrete(ts[t].size()), FinSpace::discrete(m), ts[t]);
              rec.violation(Json{{"map", to_json(f)}, {"base", to_json(base)}, {"mode", to_string(mode)},
                                 {"family", to_json(family_of(cb, a, m))}});
            }
            ++r.checked;
          }
        });
      }
    }
  }
  r.stats["maps"] = maps;
  return r;
}

SuiteResult fiber_algebra(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "lemma7-algebra";
  Recorder rec(r);
  Rng base_rng = make_rng(b, r.suite, 0);
  std::vector<std::pair<Base, EvalMode>> bs;
  for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
    for (Base& base : bases(b, mode, base_rng)) bs.emplace_back(std::move(base), mode);
  }
  std::uint64_t maps = 0;
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    for (std::size_t m = 1; m <= b.max_points; ++m) {
      Rng rng = make_rng(b, r.suite, n * 64 + m);
      for (const auto& t : tables(n, m, b, rng)) {
        ++maps;
        const PointMap f(FinSpace::discrete(n), FinSpace::discrete(m), t);
        const SetClass alg = alg_enumerate(f);
        const std::vector<Bits> img = image_table(t);
        const std::vector<Bits> pre = preimage_table(t, m);
        std::vector<Bits> brute;
        for (Bits a = 0; a <= full_bits(n); ++a) {
          if (pre[img[a]] == a) brute.push_back(a);
        }
        const Json mj = to_json(f);
        if (alg != SetClass::from_bits(n, brute)) rec.violation(Json{{"map", mj}, {"check", "algebra"}});
        if (alg.size() != (std::size_t{1} << kernel(f).size())) rec.violation(Json{{"map", mj}, {"check", "cardinality"}});
        r.checked += 2;
        for (const auto& [base, mode] : bs) {
          if (!generate_class(base, alg, mode).subset_of(alg)) {
            rec.violation(Json{{"map", mj}, {"check", "closure"}, {"base", to_json(base)}, {"mode", to_string(mode)}});
          }
          ++r.checked;
        }
      }
    }
  }
  r.stats["maps"] = maps;
  return r;
}

SuiteResult diag(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "diag-product";
  Recorder rec(r);
  // Factor algebras are absorbed by the product: all pairs of maps on <= 3 points.
  const std::size_t pair_points = std::min<std::size_t>(b.max_points, 3);
  for (std::size_t n = 1; n <= pair_points; ++n) {
    std::vector<PointMap> maps;
    for (std::size_t m = 1; m <= pair_points; ++m) {
      Rng rng = make_rng(b, r.suite, n * 64 + m);
      for (const auto& t : tables(n, m, b, rng)) maps.emplace_back(FinSpace::discrete(n), FinSpace::discrete(m), t);
    }
    for (const PointMap& f0 : maps) {
      for (const PointMap& f1 : maps) {
        const std::vector<PointMap> pair{f0, f1};
        const DiagonalProduct d = diagonal_product(pair);
        for (Bits a = 0; a <= full_bits(n); ++a) {
          const SubsetMask s(n, a);
          if ((alg_contains(f0, s) || alg_contains(f1, s)) && !alg_contains(d.map, s)) {
            rec.violation(Json{{"maps", Json::array({to_json(f0), to_json(f1)})}, {"set", to_json(s)}});
          }
          ++r.checked;
        }
      }
    }
  }
  // Zero-set witness maps: every list of up to three zero sets.
  std::vector<std::pair<Base, EvalMode>> bs;
  Rng base_rng = make_rng(b, r.suite, 0);
  for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
    for (Base& base : bases(b, mode, base_rng)) bs.emplace_back(std::move(base), mode);
  }
  std::uint64_t lists = 0;
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    Rng rng = make_rng(b, r.suite, 1000 + n);
    for (const FinSpace& space : spaces_of_size(n, b, rng)) {
      const SetClass zs = zero_sets(space);
      const std::vector<SubsetMask>& z = zs.members();
      std::vector<std::size_t> idx;
      const auto visit = [&](bool distinct) {
        std::vector<SubsetMask> zeros;
        for (std::size_t i : idx) zeros.push_back(z[i]);
        const ZeroWitness w = zero_witness_map(space, zeros);
        ++lists;
        ++r.checked;
        if (!w.certified()) rec.violation(Json{{"space", to_json(space)}, {"zeros", sets_json(zeros)}});
        if (!distinct || zeros.empty()) return;
        // Repetition does not change the generated class, so closure is
        // checked once per set of zero sets.
        const SetClass alg = alg_enumerate(w.product.map);
        const SetClass gens(n, zeros);
        for (const auto& [base, mode] : bs) {
          if (!generate_class(base, gens, mode).subset_of(alg)) {
            rec.violation(Json{{"space", to_json(space)}, {"zeros", sets_json(zeros)}, {"base", to_json(base)},
                               {"mode", to_string(mode)}});
          }
          ++r.checked;
        }
      };
      // Nondecreasing index lists of length 0..3.
      std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t from, std::size_t left) {
        bool distinct = true;
        for (std::size_t i = 1; i < idx.size(); ++i) distinct = distinct && idx[i] != idx[i - 1];
        visit(distinct);
        if (left == 0) return;
        for (std::size_t i = from; i < z.size(); ++i) {
          idx.push_back(i);
          walk(i, left - 1);
          idx.pop_back();
        }
      };
      walk(0, 3);
    }
  }
  r.stats["zero_lists"] = lists;
  return r;
}

// Shared enumeration for the directed-image suites.
template <typename Fn>
void directed_instances(const FuzzBounds& b, const std::string& suite, Fn&& fn) {
  std::vector<std::vector<IndexOrder>> orders(4);
  for (std::size_t k = 1; k <= 3; ++k) orders[k] = posets(k);
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    for (std::size_t m = 1; m <= b.max_points; ++m) {
      Rng rng = make_rng(b, suite, n * 64 + m);
      for (const auto& t : tables(n, m, b, rng)) {
        const std::vector<Bits> img = image_table(t);
        for (std::size_t k = 1; k <= 3; ++k) {
          for (const IndexOrder& order : orders[k]) {
            const auto strict = order.strict_pairs();
            const bool directed = order.directed();
            for_each_assignment(k, all_subsets(n), b, rng, [&](std::span<const Bits> a) {
              bool decreasing = true;
              for (const auto& [i, j] : strict) decreasing = decreasing && (a[j] & ~a[i]) == 0;
              Bits meet = full_bits(n);
              Bits image_meet = full_bits(m);
              for (Bits s : a) {
                meet &= s;
                image_meet &= img[s];
              }
              fn(t, m, order, directed, decreasing, a, img[meet] == image_meet);
            });
          }
        }
      }
    }
  }
}

Json directed_instance(const std::vector<std::size_t>& t, std::size_t m, const IndexOrder& order,
                       std::span<const Bits> a) {
  const PointMap f(FinSpace::discrete(t.size()), FinSpace::discrete(m), t);
  std::vector<SubsetMask> fam;
  for (Bits s : a) fam.emplace_back(t.size(), s);
  return Json{{"map", to_json(f)}, {"order", to_json(order)}, {"family", sets_json(fam)}};
}

SuiteResult directed_image(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "prop11-image";
  Recorder rec(r);
  directed_instances(b, r.suite, [&](const auto& t, std::size_t m, const IndexOrder& order, bool directed,
                                     bool decreasing, std::span<const Bits> a, bool equal) {
    if (!directed || !decreasing) return;
    ++r.checked;
    if (!equal) rec.violation(directed_instance(t, m, order, a));
  });
  return r;
}

SuiteResult directed_necessity(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "prop11-necessity";
  r.needs_counterexample = true;
  Recorder rec(r);
  std::uint64_t not_decreasing = 0, not_directed = 0;
  directed_instances(b, r.suite, [&](const auto& t, std::size_t m, const IndexOrder& order, bool directed,
                                     bool decreasing, std::span<const Bits> a, bool equal) {
    ++r.checked;
    if (equal) return;
    if (directed && decreasing) {
      rec.violation(directed_instance(t, m, order, a));
    } else if (directed) {
      if (not_decreasing++ == 0) r.stats["first_not_decreasing_dom"] = t.size();
      rec.counterexample("not-decreasing", directed_instance(t, m, order, a));
    } else if (decreasing) {
      ++not_directed;
      rec.counterexample("not-directed", directed_instance(t, m, order, a));
    }
  });
  r.stats["not_decreasing"] = not_decreasing;
  r.stats["not_directed"] = not_directed;
  return r;
}

SuiteResult image_eval(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "lemma12-image";
  Recorder rec(r);
  std::uint64_t non_injective = 0, without_counterexample = 0;
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    std::vector<std::vector<std::size_t>> ts;
    std::vector<std::vector<Bits>> img;
    std::vector<std::size_t> cods;
    for (std::size_t m = 1; m <= b.max_points; ++m) {
      Rng rng = make_rng(b, r.suite, n * 64 + m);
      for (auto& t : tables(n, m, b, rng)) {
        img.push_back(image_table(t));
        ts.push_back(std::move(t));
        cods.push_back(m);
      }
    }
    std::vector<bool> found(ts.size(), false);
    Rng rng = make_rng(b, r.suite, n);
    const Bits X = full_bits(n);
    for (const Base& base : bases(b, EvalMode::prefix, rng)) {
      const CompiledBase cb(base, EvalMode::prefix);
      const auto& words = cb.slot_words();
      std::vector<std::ptrdiff_t> parent(words.size(), -1);
      for (std::size_t i = 0; i < words.size(); ++i) {
        const Word p(words[i].begin(), words[i].end() - 1);
        const auto it = std::find(words.begin(), words.end(), p);
        if (it != words.end()) parent[i] = it - words.begin();
      }
      std::vector<Bits> tmp(words.size());
      const auto instance = [&](std::size_t t, std::span<const Bits> fam) {
        const PointMap f(FinSpace::discrete(n), FinSpace::discrete(cods[t]), ts[t]);
        return Json{{"map", to_json(f)}, {"base", to_json(base)}, {"family", to_json(family_of(cb, fam, n))}};
      };
      for_each_decreasing(parent, X, b, rng, [&](std::span<const Bits> dec) {
        const Bits v = cb.evaluate(dec, X);
        for (std::size_t t = 0; t < ts.size(); ++t) {
          for (std::size_t i = 0; i < dec.size(); ++i) tmp[i] = img[t][dec[i]];
          ++r.checked;
          if (cb.evaluate(tmp, full_bits(cods[t])) != img[t][v]) rec.violation(instance(t, dec));
        }
      });
      // Without the decreasing hypothesis: find one raw counterexample per map.
      if (std::all_of(found.begin(), found.end(), [](bool f) { return f; })) continue;
      for_each_assignment(words.size(), all_subsets(n), b, rng, [&](std::span<const Bits> a) {
        const Bits v = cb.evaluate(a, X);
        for (std::size_t t = 0; t < ts.size(); ++t) {
          if (found[t]) continue;
          for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = img[t][a[i]];
          if (cb.evaluate(tmp, full_bits(cods[t])) != img[t][v]) {
            found[t] = true;
            rec.counterexample("not-decreasing", instance(t, a));
          }
        }
      });
    }
    for (std::size_t t = 0; t < ts.size(); ++t) {
      std::vector<std::size_t> sorted = ts[t];
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) continue;
      ++non_injective;
      if (!found[t] && b.depth >= 2) ++without_counterexample;
    }
  }
  // A non-injective F glues two points x, y; the family A_0 = {x}, A_00 = {y}
  // then has empty value but nonempty image value.
  r.violations += without_counterexample;
  r.stats["non_injective_maps"] = non_injective;
  r.stats["non_injective_without_counterexample"] = without_counterexample;
  return r;
}

SuiteResult reduction(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "lemma1-reduction";
  Recorder rec(r);
  std::uint64_t spaces = 0, reducing = 0;
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    Rng rng = make_rng(b, r.suite, n);
    for (const FinSpace& space : spaces_of_size(n, b, rng)) {
      ++spaces;
      const SetClass opens = open_sets(space);
      if (!check_reduction(opens).holds) continue;
      ++reducing;
      const SetClass closed = closed_sets(space);
      bool ok = check_separation(closed).holds;
      for (const auto& a : closed) {
        for (const auto& c : closed) {
          if (!a.disjoint_from(c)) continue;
          ok = ok && reduction_to_separation(opens, a, c).valid(closed);
          ++r.checked;
        }
      }
      ++r.checked;
      if (!ok) rec.violation(Json{{"space", to_json(space)}});
    }
  }
  r.stats["spaces"] = spaces;
  r.stats["with_reducing_opens"] = reducing;
  return r;
}

SuiteResult transfer(const FuzzBounds& b) {
  SuiteResult r;
  r.suite = "transfer";
  Recorder rec(r);
  std::uint64_t runs = 0, all_hypotheses = 0;
  std::map<char, std::uint64_t> failed;
  const std::size_t points = std::min<std::size_t>(b.max_points, 3);
  for (std::size_t m = 1; m <= points; ++m) {
    Rng grng = make_rng(b, r.suite, m);
    const auto targets = spaces_of_size(m, b, grng);
    for (std::size_t n = 1; n <= points; ++n) {
      Rng rng = make_rng(b, r.suite, n * 64 + m);
      for (const auto& t : tables(n, m, b, rng)) {
        const PointMap f(FinSpace::discrete(n), FinSpace::discrete(m), t);
        for (const FinSpace& y : targets) {
          const SetClass gy = open_sets(y);
          const SetClass gx = preimage_class(f, gy);
          for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
            for (const Base& base : representative_bases(mode)) {
              for (Property which : {Property::reduction, Property::separation}) {
                const TransferReport rep = transfer_property(f, base, gx, gy, mode, which);
                ++runs;
                for (const auto& fl : rep.failures) ++failed[fl.hypothesis];
                if (!(rep.preserves_generators && rep.generators_in_algebra && rep.target_has_property)) continue;
                ++all_hypotheses;
                ++r.checked;
                if (!rep.holds) {
                  rec.violation(Json{{"map", to_json(f)}, {"base", to_json(base)}, {"mode", to_string(mode)},
                                     {"property", to_string(which)}, {"generators_x", to_json(gx)},
                                     {"generators_y", to_json(gy)}});
                }
              }
            }
          }
        }
      }
    }
  }
  // Identity transfer is the direct check.
  for (std::size_t n = 1; n <= points; ++n) {
    Rng rng = make_rng(b, r.suite, 500 + n);
    for (const FinSpace& space : spaces_of_size(n, b, rng)) {
      const SetClass gens = open_sets(space);
      for (EvalMode mode : {EvalMode::prefix, EvalMode::range}) {
        for (const Base& base : representative_bases(mode)) {
          const SetClass cls = generate_class(base, gens, mode);
          for (Property which : {Property::reduction, Property::separation}) {
            const bool direct = which == Property::reduction ? check_reduction(cls).holds : check_separation(cls).holds;
            const bool via = transfer_property(PointMap::identity(space), base, gens, gens, mode, which).holds;
            ++r.checked;
            if (direct != via) {
              rec.counterexample("identity-mismatch", Json{{"space", to_json(space)}, {"base", to_json(base)},
                                                           {"mode", to_string(mode)}, {"property", to_string(which)}});
              ++r.violations;
              --r.counterexamples;
            }
          }
        }
      }
    }
  }
  r.stats["runs"] = runs;
  r.stats["hypotheses_hold"] = all_hypotheses;
  r.stats["failed_a"] = failed['a'];
  r.stats["failed_b"] = failed['b'];
  r.stats["failed_c"] = failed['c'];
  return r;
}

SuiteResult zerotych(const FuzzBounds& b, bool gap_search) {
  SuiteResult r;
  r.suite = gap_search ? "zerotych-gap" : "zerotych-traces";
  r.needs_counterexample = gap_search;
  Recorder rec(r);
  std::uint64_t spaces = 0;
  for (std::size_t n = 1; n <= b.max_points; ++n) {
    Rng rng = make_rng(b, r.suite, n);
    for (const FinSpace& space : spaces_of_size(n, b, rng)) {
      if (gap_search && space.is_discrete()) continue;
      ++spaces;
      for (Bits c = 0; c <= full_bits(n); ++c) {
        const SubsetMask carrier(n, c);
        const ZeroTraceGap g = zero_trace_gap(space, carrier);
        ++r.checked;
        const Json in{{"space", to_json(space)}, {"carrier", to_json(carrier)}};
        if (!g.traces_included || (space.is_discrete() && !g.gap.empty())) rec.violation(in);
        if (gap_search && !g.gap.empty()) rec.counterexample("gap", in);
      }
    }
  }
  r.stats["spaces"] = spaces;
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "lemma2-distributivity", "lemma5-preimage", "lemma7-algebra",   "diag-product",
      "prop11-image",          "prop11-necessity", "lemma12-image",   "lemma1-reduction",
      "transfer",              "zerotych-traces",  "zerotych-gap",
  };
  return names;
}

SuiteResult run_suite(const std::string& suite, const FuzzBounds& bounds) {
  if (bounds.max_points == 0 || bounds.max_points > 6) throw InputError("--max-points must be between 1 and 6");
  if (bounds.alphabet == 0 || bounds.alphabet > default_limits().max_alphabet) {
    throw InputError("--alphabet must be between 1 and " + std::to_string(default_limits().max_alphabet));
  }
  if (bounds.depth == 0 || bounds.depth > default_limits().max_depth) {
    throw InputError("--depth must be between 1 and " + std::to_string(default_limits().max_depth));
  }
  if (bounds.budget == 0) throw InputError("--budget must be positive");
  if (suite == "lemma2-distributivity") return distributivity(bounds);
  if (suite == "lemma5-preimage") return preimage(bounds);
  if (suite == "lemma7-algebra") return fiber_algebra(bounds);
  if (suite == "diag-product") return diag(bounds);
  if (suite == "prop11-image") return directed_image(bounds);
  if (suite == "prop11-necessity") return directed_necessity(bounds);
  if (suite == "lemma12-image") return image_eval(bounds);
  if (suite == "lemma1-reduction") return reduction(bounds);
  if (suite == "transfer") return transfer(bounds);
  if (suite == "zerotych-traces") return zerotych(bounds, false);
  if (suite == "zerotych-gap") return zerotych(bounds, true);
  throw InputError("unknown suite \"" + suite + "\"");
}

bool replay(const Json& corpus, const Limits& limits) {
  const std::string suite = require(corpus, "suite", "").get<std::string>();
  const std::string kind = require(corpus, "kind", "").get<std::string>();
  const auto it = observers().find(suite);
  if (it == observers().end()) throw InputError("suite: unknown suite \"" + suite + "\"");
  const Observation obs = it->second(kind, require(corpus, "instance", ""), limits);
  return obs && *obs == require(corpus, "observed", "");
}

}  // namespace phiset::cli
