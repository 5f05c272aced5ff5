#include "phiset/hausdorff.hpp"

#include <algorithm>
#include <set>

#include "phiset/errors.hpp"

namespace phiset {

std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(static_cast<unsigned>(w[i]));
  }
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  if (s.empty()) return w;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = s.find('.', start);
    const std::string token = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (token.empty() || token.size() > 3 ||
        !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("malformed index \"" + s + "\"");
    }
    const int v = std::stoi(token);
    if (v > 255) throw InputError("index symbol out of range in \"" + s + "\"");
    w.push_back(static_cast<std::uint8_t>(v));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return w;
}

std::uint64_t word_index(const Word& w, std::size_t alphabet) {
  if (alphabet == 0) throw InputError("alphabet must have at least one symbol");
  std::uint64_t index = 0;
  for (std::uint8_t s : w) {
    if (s >= alphabet) throw InputError("symbol " + std::to_string(s) + " outside the alphabet");
    if (index > (~std::uint64_t{0} - alphabet) / alphabet) throw InputError("word index overflows");
    index = index * alphabet + s + 1;
  }
  return index;
}

Word word_at(std::uint64_t index, std::size_t alphabet) {
  if (alphabet == 0) throw InputError("alphabet must have at least one symbol");
  Word w;
  while (index > 0) {
    --index;
    w.push_back(static_cast<std::uint8_t>(index % alphabet));
    index /= alphabet;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

const char* to_string(EvalMode mode) { return mode == EvalMode::prefix ? "prefix" : "range"; }

EvalMode eval_mode_from_string(const std::string& s) {
  if (s == "prefix") return EvalMode::prefix;
  if (s == "range") return EvalMode::range;
  throw InputError("unknown evaluation mode \"" + s + "\" (expected prefix or range)");
}

Base::Base(std::size_t alphabet, std::vector<Word> branches, EvalMode mode_hint,
           const Limits& limits)
    : alphabet_(alphabet), branches_(std::move(branches)), mode_hint_(mode_hint) {
  if (alphabet_ == 0) throw InputError("base alphabet must have at least one symbol");
  if (alphabet_ > limits.max_alphabet) {
    throw ResourceError("alphabet " + std::to_string(alphabet_) + " exceeds the cap of " +
                        std::to_string(limits.max_alphabet));
  }
  for (const auto& b : branches_) {
    if (b.empty()) throw InputError("base branches must be nonempty");
    if (b.size() > limits.max_depth) {
      throw ResourceError("branch of length " + std::to_string(b.size()) + " exceeds the depth cap of " +
                          std::to_string(limits.max_depth));
    }
    for (std::uint8_t s : b) {
      if (s >= alphabet_) {
        throw InputError("branch symbol " + std::to_string(s) + " outside alphabet of size " +
                         std::to_string(alphabet_));
      }
    }
  }
  std::sort(branches_.begin(), branches_.end(), LengthLexLess{});
  branches_.erase(std::unique(branches_.begin(), branches_.end()), branches_.end());
  if (branches_.size() > limits.max_branches) {
    throw ResourceError(std::to_string(branches_.size()) + " branches exceed the cap of " +
                        std::to_string(limits.max_branches));
  }
}

std::size_t Base::depth() const {
  std::size_t d = 0;
  for (const auto& b : branches_) d = std::max(d, b.size());
  return d;
}

std::vector<Word> Base::prefix_indices() const {
  std::set<Word, LengthLexLess> out;
  for (const auto& b : branches_) {
    for (std::size_t k = 1; k <= b.size(); ++k) out.emplace(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return {out.begin(), out.end()};
}

std::vector<std::uint32_t> Base::symbols() const {
  std::set<std::uint32_t> out;
  for (const auto& b : branches_) out.insert(b.begin(), b.end());
  return {out.begin(), out.end()};
}

Base union_base(std::size_t arity, const Limits& limits) {
  if (arity == 0) throw InputError("union base needs arity >= 1");
  if (arity > limits.max_alphabet) throw ResourceError("union arity exceeds the alphabet cap");
  std::vector<Word> branches;
  for (std::size_t i = 0; i < arity; ++i) branches.push_back({static_cast<std::uint8_t>(i)});
  return {arity, std::move(branches), EvalMode::range, limits};
}

Base intersection_base(std::size_t arity, const Limits& limits) {
  if (arity == 0) throw InputError("intersection base needs arity >= 1");
  if (arity > limits.max_alphabet || arity > limits.max_depth) {
    throw ResourceError("intersection arity exceeds the alphabet or depth cap");
  }
  Word branch;
  for (std::size_t i = 0; i < arity; ++i) branch.push_back(static_cast<std::uint8_t>(i));
  return {arity, {branch}, EvalMode::range, limits};
}

Base a_operation_base(std::size_t alphabet, std::size_t depth, const Limits& limits) {
  if (alphabet == 0 || depth == 0) throw InputError("A-operation base needs alphabet, depth >= 1");
  if (alphabet > limits.max_alphabet || depth > limits.max_depth) {
    throw ResourceError("A-operation alphabet or depth exceeds its cap");
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < depth; ++i) count *= alphabet;
  if (count > limits.max_branches) {
    throw ResourceError("A-operation base would have " + std::to_string(count) +
                        " branches, cap is " + std::to_string(limits.max_branches));
  }
  std::vector<Word> branches;
  for (std::uint64_t c = 0; c < count; ++c) {
    Word w(depth);
    std::uint64_t rest = c;
    for (std::size_t i = depth; i-- > 0;) {
      w[i] = static_cast<std::uint8_t>(rest % alphabet);
      rest /= alphabet;
    }
    branches.push_back(std::move(w));
  }
  return {alphabet, std::move(branches), EvalMode::range, limits};
}

IndexedFamily::IndexedFamily(EvalMode kind, std::size_t universe, std::optional<SubsetMask> fallback)
    : kind_(kind), universe_(universe), fallback_(std::move(fallback)) {
  if (fallback_ && fallback_->universe_size() != universe) {
    throw InputError("family default lives in a different universe");
  }
}

IndexedFamily& IndexedFamily::set(const Word& index, const SubsetMask& mask) {
  if (kind_ != EvalMode::prefix) throw ModeError("word index on a range-mode family");
  if (mask.universe_size() != universe_) {
    throw InputError("family member at \"" + word_to_string(index) + "\" has the wrong universe");
  }
  by_word_.insert_or_assign(index, mask);
  return *this;
}

IndexedFamily& IndexedFamily::set(std::uint32_t symbol, const SubsetMask& mask) {
  if (kind_ != EvalMode::range) throw ModeError("symbol index on a prefix-mode family");
  if (mask.universe_size() != universe_) {
    throw InputError("family member at " + std::to_string(symbol) + " has the wrong universe");
  }
  by_symbol_.insert_or_assign(symbol, mask);
  return *this;
}

SubsetMask IndexedFamily::at(const Word& index) const {
  if (kind_ != EvalMode::prefix) throw ModeError("word lookup on a range-mode family");
  if (auto it = by_word_.find(index); it != by_word_.end()) return it->second;
  if (index.empty()) return SubsetMask::full(universe_);
  if (fallback_) return *fallback_;
  throw InputError("no set assigned to index \"" + word_to_string(index) + "\" and no default");
}

SubsetMask IndexedFamily::at(std::uint32_t symbol) const {
  if (kind_ != EvalMode::range) throw ModeError("symbol lookup on a prefix-mode family");
  if (auto it = by_symbol_.find(symbol); it != by_symbol_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw InputError("no set assigned to index " + std::to_string(symbol) + " and no default");
}

IndexedFamily IndexedFamily::complemented() const {
  return transformed(universe_, [](const SubsetMask& m) { return m.complement(); });
}

IndexedFamily IndexedFamily::intersected(const SubsetMask& mask) const {
  return transformed(universe_, [&](const SubsetMask& m) { return m & mask; });
}

IndexedFamily IndexedFamily::united(const SubsetMask& mask) const {
  return transformed(universe_, [&](const SubsetMask& m) { return m | mask; });
}

CompiledBase::CompiledBase(const Base& base, EvalMode mode) : mode_(mode) {
  if (mode == EvalMode::prefix) {
    words_ = base.prefix_indices();
    slot_count_ = words_.size();
    for (const auto& b : base.branches()) {
      std::vector<std::uint32_t> slots;
      for (std::size_t k = 1; k <= b.size(); ++k) {
        const Word p(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
        const auto it = std::lower_bound(words_.begin(), words_.end(), p, LengthLexLess{});
        slots.push_back(static_cast<std::uint32_t>(it - words_.begin()));
      }
      branch_slots_.push_back(std::move(slots));
    }
  } else {
    symbols_ = base.symbols();
    slot_count_ = symbols_.size();
    for (const auto& b : base.branches()) {
      std::set<std::uint32_t> slots;
      for (std::uint8_t s : b) {
        const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), std::uint32_t{s});
        slots.insert(static_cast<std::uint32_t>(it - symbols_.begin()));
      }
      branch_slots_.emplace_back(slots.begin(), slots.end());
    }
  }
}

std::vector<Bits> CompiledBase::slots_of(const IndexedFamily& family) const {
  if (family.kind() != mode_) {
    throw ModeError(std::string("a ") + to_string(family.kind()) + "-indexed family cannot be evaluated in " +
                    to_string(mode_) + " mode");
  }
  std::vector<Bits> slots;
  slots.reserve(slot_count_);
  if (mode_ == EvalMode::prefix) {
    for (const auto& w : words_) slots.push_back(family.at(w).bits());
  } else {
    for (std::uint32_t s : symbols_) slots.push_back(family.at(s).bits());
  }
  return slots;
}

SubsetMask eval(const Base& base, const IndexedFamily& family, EvalMode mode) {
  const CompiledBase compiled(base, mode);
  const std::vector<Bits> slots = compiled.slots_of(family);
  const std::size_t n = family.universe_size();
  const Bits root = mode == EvalMode::prefix ? family.at(Word{}).bits() : full_bits(n);
  return {n, compiled.evaluate(slots, root)};
}

SubsetMask dual_eval(const Base& base, const IndexedFamily& family, EvalMode mode) {
  return eval(base, family.complemented(), mode).complement();
}

Base completion(const Base& base, std::size_t length_bound, const Limits& limits) {
  if (base.mode_hint() != EvalMode::range) {
    throw ModeError("completion is defined for range-mode bases only");
  }
  if (length_bound < base.depth()) {
    throw InputError("length bound " + std::to_string(length_bound) +
                     " is shorter than the longest branch (" + std::to_string(base.depth()) + ")");
  }
  if (length_bound > limits.max_depth) {
    throw ResourceError("completion length bound exceeds the depth cap");
  }
  const std::size_t b = base.alphabet();
  auto range_of = [](const Word& w) {
    Bits r = 0;
    for (std::uint8_t s : w) r |= Bits{1} << s;
    return r;
  };
  std::set<Bits> ranges;
  for (const auto& br : base.branches()) ranges.insert(range_of(br));

  std::vector<Word> out;
  Word w;
  for (std::size_t len = 1; len <= length_bound; ++len) {
    w.assign(len, 0);
    while (true) {
      if (ranges.count(range_of(w))) {
        out.push_back(w);
        if (out.size() > limits.max_branches) {
          throw ResourceError("completion exceeds the branch cap of " + std::to_string(limits.max_branches));
        }
      }
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1u == b) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return {b, std::move(out), EvalMode::range, limits};
}

IndexedFamily decreasing_replacement(const IndexedFamily& family, std::span<const Word> indices) {
  if (family.kind() != EvalMode::prefix) {
    throw ModeError("decreasing replacement applies to prefix-mode families only");
  }
  IndexedFamily out = IndexedFamily::prefix(family.universe_size());
  if (family.assigned(Word{})) out.set(Word{}, family.at(Word{}));
  for (const auto& p : indices) {
    SubsetMask acc = family.at(Word{});
    for (std::size_t k = 1; k <= p.size(); ++k) {
      acc = acc & family.at(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k)));
    }
    out.set(p, acc);
  }
  return out;
}

IndexedFamily decreasing_replacement(const IndexedFamily& family) {
  if (family.kind() != EvalMode::prefix) {
    throw ModeError("decreasing replacement applies to prefix-mode families only");
  }
  std::set<Word, LengthLexLess> closure;
  for (const auto& [w, m] : family.word_entries()) {
    for (std::size_t k = 1; k <= w.size(); ++k) closure.emplace(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  }
  const std::vector<Word> indices(closure.begin(), closure.end());
  return decreasing_replacement(family, indices);
}

bool is_decreasing(const IndexedFamily& family, std::span<const Word> indices) {
  if (family.kind() != EvalMode::prefix) throw ModeError("is_decreasing expects a prefix-mode family");
  for (const auto& p : indices) {
    const SubsetMask value = family.at(p);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!value.subset_of(family.at(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k))))) return false;
    }
  }
  return true;
}

}  // namespace phiset
