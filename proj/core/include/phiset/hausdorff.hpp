#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phiset/limits.hpp"
#include "phiset/subset_mask.hpp"

namespace phiset {

/// A finite sequence over the alphabet {0, ..., b-1}.
using Word = std::vector<std::uint8_t>;

std::string word_to_string(const Word& w);  // "0.1.0", "" for the empty word
Word word_from_string(const std::string& s);

/// Length-then-lexicographic order on words.
struct LengthLexLess {
  bool operator()(const Word& a, const Word& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

/// Position of `w` in the length-lex enumeration of all words over an
/// alphabet of size `alphabet` (the empty word is 0).
std::uint64_t word_index(const Word& w, std::size_t alphabet);
Word word_at(std::uint64_t index, std::size_t alphabet);

/// How a branch picks the sets it intersects.
///  - prefix: A_p for every prefix p of the branch, the empty prefix included;
///  - range:  A_k for every symbol k occurring in the branch.
enum class EvalMode { prefix, range };

const char* to_string(EvalMode mode);
EvalMode eval_mode_from_string(const std::string& s);

/// Base of a Hausdorff operation: a finite set of nonempty finite branches.
/// A branch of length d stands for an infinite sequence whose intersection has
/// stabilized after d steps.
class Base {
 public:
  Base(std::size_t alphabet, std::vector<Word> branches, EvalMode mode_hint = EvalMode::prefix,
       const Limits& limits = default_limits());

  std::size_t alphabet() const { return alphabet_; }
  /// Deduplicated, in length-lex order.
  const std::vector<Word>& branches() const { return branches_; }
  EvalMode mode_hint() const { return mode_hint_; }
  std::size_t depth() const;

  /// Nonempty prefixes of all branches, length-lex. (The empty prefix is
  /// always an index too; it is kept implicit.)
  std::vector<Word> prefix_indices() const;
  /// Symbols occurring in some branch, increasing.
  std::vector<std::uint32_t> symbols() const;

  friend bool operator==(const Base&, const Base&) = default;

 private:
  std::size_t alphabet_;
  std::vector<Word> branches_;
  EvalMode mode_hint_;
};

Base union_base(std::size_t arity, const Limits& limits = default_limits());
Base intersection_base(std::size_t arity, const Limits& limits = default_limits());
Base a_operation_base(std::size_t alphabet, std::size_t depth,
                      const Limits& limits = default_limits());

/// Sets indexed either by words (prefix mode) or by symbols (range mode).
///
/// Unassigned indices take the family's default set, if it has one. In prefix
/// mode the empty word, when not assigned explicitly, always stands for the
/// full universe.
class IndexedFamily {
 public:
  IndexedFamily(EvalMode kind, std::size_t universe,
                std::optional<SubsetMask> fallback = std::nullopt);

  static IndexedFamily prefix(std::size_t universe,
                              std::optional<SubsetMask> fallback = std::nullopt) {
    return {EvalMode::prefix, universe, std::move(fallback)};
  }
  static IndexedFamily range(std::size_t universe,
                             std::optional<SubsetMask> fallback = std::nullopt) {
    return {EvalMode::range, universe, std::move(fallback)};
  }

  EvalMode kind() const { return kind_; }
  std::size_t universe_size() const { return universe_; }
  const std::optional<SubsetMask>& fallback() const { return fallback_; }

  IndexedFamily& set(const Word& index, const SubsetMask& mask);
  IndexedFamily& set(std::uint32_t symbol, const SubsetMask& mask);

  /// Resolved value of an index; throws InputError when unassigned with no default.
  SubsetMask at(const Word& index) const;
  SubsetMask at(std::uint32_t symbol) const;
  bool assigned(const Word& index) const { return by_word_.count(index) != 0; }

  const std::map<Word, SubsetMask, LengthLexLess>& word_entries() const { return by_word_; }
  const std::map<std::uint32_t, SubsetMask>& symbol_entries() const { return by_symbol_; }

  /// Apply `fn` to every assigned set and to the default, moving the family
  /// into a universe of `universe` points. The implicit empty prefix stays
  /// implicit (it is the full universe on both sides).
  template <typename Fn>
  IndexedFamily transformed(std::size_t universe, Fn&& fn) const {
    IndexedFamily out(kind_, universe,
                      fallback_ ? std::optional<SubsetMask>(fn(*fallback_)) : std::nullopt);
    for (const auto& [w, m] : by_word_) out.by_word_.emplace(w, fn(m));
    for (const auto& [k, m] : by_symbol_) out.by_symbol_.emplace(k, fn(m));
    return out;
  }

  IndexedFamily complemented() const;
  IndexedFamily intersected(const SubsetMask& mask) const;
  IndexedFamily united(const SubsetMask& mask) const;

  friend bool operator==(const IndexedFamily&, const IndexedFamily&) = default;

 private:
  EvalMode kind_;
  std::size_t universe_;
  std::optional<SubsetMask> fallback_;
  std::map<Word, SubsetMask, LengthLexLess> by_word_;
  std::map<std::uint32_t, SubsetMask> by_symbol_;
};

/// ⋃ over branches of the intersection selected by `mode`.
SubsetMask eval(const Base& base, const IndexedFamily& family, EvalMode mode);
/// The dual operation: universe minus eval of the complemented family.
SubsetMask dual_eval(const Base& base, const IndexedFamily& family, EvalMode mode);

/// All sequences of length <= length_bound whose symbol range equals the
/// range of some branch. Range-mode bases only.
Base completion(const Base& base, std::size_t length_bound, const Limits& limits = default_limits());

/// B_p = ⋂ A_q over all prefixes q of p (the empty prefix included), over the
/// given index set. The result is decreasing along prefix extension.
IndexedFamily decreasing_replacement(const IndexedFamily& family, std::span<const Word> indices);
/// Same, over the downward closure of the family's assigned words.
IndexedFamily decreasing_replacement(const IndexedFamily& family);

/// True iff A_q ⊇ A_p whenever q is a prefix of p, for p, q in `indices`
/// (the empty prefix included).
bool is_decreasing(const IndexedFamily& family, std::span<const Word> indices);

/// A base lowered for fast repeated evaluation over dense value arrays.
///
/// Index slots are the base's prefix_indices() (prefix mode) or symbols()
/// (range mode), in that order. In prefix mode the empty prefix is evaluated
/// as `root`.
class CompiledBase {
 public:
  CompiledBase(const Base& base, EvalMode mode);

  EvalMode mode() const { return mode_; }
  std::size_t slot_count() const { return slot_count_; }
  const std::vector<Word>& slot_words() const { return words_; }
  const std::vector<std::uint32_t>& slot_symbols() const { return symbols_; }

  Bits evaluate(std::span<const Bits> slots, Bits root) const {
    Bits result = 0;
    for (const auto& branch : branch_slots_) {
      Bits acc = root;
      for (std::uint32_t s : branch) acc &= slots[s];
      result |= acc;
    }
    return result;
  }

  /// Resolve a family into slot values.
  std::vector<Bits> slots_of(const IndexedFamily& family) const;

 private:
  EvalMode mode_;
  std::size_t slot_count_ = 0;
  std::vector<Word> words_;
  std::vector<std::uint32_t> symbols_;
  std::vector<std::vector<std::uint32_t>> branch_slots_;
};

}  // namespace phiset
