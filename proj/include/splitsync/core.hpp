#ifndef SPLITSYNC_CORE_HPP
#define SPLITSYNC_CORE_HPP

// Automata data model: state sets, symbols viewed as relations on Q, and
// complete nondeterministic automata (CNFAs) as duplicate-free symbol sets.
//
// States are 0-based inside the library. Everything that faces a human
// (files, CLI, reports) is 1-based; the io layer does the translation.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "splitsync/error.hpp"

namespace splitsync {

inline constexpr std::size_t kMaxStates = 16;

using State = std::uint8_t;

// A subset of {0..n-1}, n <= 16, stored as one bit mask.
class StateSet {
 public:
  using Mask = std::uint16_t;

  constexpr StateSet() = default;
  constexpr explicit StateSet(Mask bits) : bits_(bits) {}

  static constexpr StateSet single(State q) { return StateSet(Mask(1u << q)); }
  static constexpr StateSet full(std::size_t n) {
    return StateSet(Mask(n >= 16 ? 0xFFFFu : (1u << n) - 1u));
  }
  // Literal with 1-based states: {1,3} means states 0 and 2.
  static StateSet from_one_based(std::initializer_list<int> states);

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return std::popcount(bits_); }
  constexpr bool contains(State q) const { return (bits_ >> q) & 1u; }
  constexpr bool is_singleton() const { return std::has_single_bit(bits_); }
  // Lowest member; only meaningful for a nonempty set.
  constexpr State min() const { return State(std::countr_zero(bits_)); }
  constexpr State max() const { return State(15 - std::countl_zero(bits_)); }

  constexpr bool subset_of(StateSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr void insert(State q) { bits_ |= Mask(1u << q); }

  constexpr StateSet operator|(StateSet o) const { return StateSet(Mask(bits_ | o.bits_)); }
  constexpr StateSet operator&(StateSet o) const { return StateSet(Mask(bits_ & o.bits_)); }
  constexpr StateSet& operator|=(StateSet o) { bits_ |= o.bits_; return *this; }
  constexpr StateSet& operator&=(StateSet o) { bits_ &= o.bits_; return *this; }

  constexpr auto operator<=>(const StateSet&) const = default;

  // Iterates over members in increasing order.
  class iterator {
   public:
    using value_type = State;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(Mask rest) : rest_(rest) {}
    constexpr State operator*() const { return State(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= Mask(rest_ - 1u); return *this; }
    constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
    constexpr bool operator==(const iterator&) const = default;

   private:
    Mask rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<State> members() const { return {begin(), end()}; }
  // "{1,3}" with 1-based members.
  std::string to_string() const;

 private:
  Mask bits_ = 0;
};

// A symbol a : Q -> 2^Q \ {∅}. The images vector has exactly n entries.
class Symbol {
 public:
  Symbol() = default;
  // Throws InvalidArgument when n is 0 or above 16, an image is empty, or an
  // image reaches outside {0..n-1}.
  explicit Symbol(std::vector<StateSet> images);

  static Symbol identity(std::size_t n);
  // Deterministic symbol from a state map, q -> targets[q].
  static Symbol from_map(std::span<const State> targets);
  // Literal with one 1-based image list per state.
  static Symbol from_one_based(
      std::initializer_list<std::initializer_list<int>> images);

  std::size_t n() const { return n_; }
  StateSet image(State q) const { return images_[q]; }
  std::span<const StateSet> images() const { return {images_.data(), n_}; }

  bool is_deterministic() const;
  bool is_identity() const;
  // Target of q; requires |image(q)| == 1.
  State target(State q) const { return images_[q].min(); }
  // Product of image sizes: the number of deterministic sub-symbols.
  unsigned long long choice_count() const;

  bool operator==(const Symbol& o) const;
  std::strong_ordering operator<=>(const Symbol& o) const;

  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::array<StateSet, kMaxStates> images_{};
};

// Sa = ∪_{q∈S} qa.
StateSet apply(const Symbol& a, StateSet s);

// b ⊆ a as edge sets: qb ⊆ qa for every q.
bool symbol_leq(const Symbol& b, const Symbol& a);

// Statewise union.
Symbol symbol_union(const Symbol& a, const Symbol& b);

// A word is a sequence of indices into an automaton's symbol list.
using Word = std::vector<std::size_t>;

// A CNFA (Q, Σ). Σ is a set: construction rejects duplicate symbols, and
// equality ignores symbol order. Symbol order is still preserved so that
// words and reports can refer to symbols by index.
class Automaton {
 public:
  Automaton() = default;
  // Throws InvalidArgument on duplicates or mismatched n.
  Automaton(std::size_t n, std::vector<Symbol> symbols);
  // Builds a set, silently merging duplicates (first occurrence kept).
  static Automaton from_symbols_dedup(std::size_t n, std::vector<Symbol> symbols);

  std::size_t n() const { return n_; }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol& symbol(std::size_t i) const { return symbols_.at(i); }

  bool is_dfa() const;
  bool contains(const Symbol& a) const;
  // Index of a symbol, or size() when absent.
  std::size_t index_of(const Symbol& a) const;

  // Symbol list in canonical (sorted) order; used for set comparison.
  std::vector<Symbol> sorted_symbols() const;

  // Set equality on Σ.
  bool operator==(const Automaton& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<Symbol> symbols_;
};

// Left-to-right fold of apply. Throws InvalidArgument on a bad index.
StateSet apply_word(const Automaton& a, const Word& w, StateSet s);

struct BasicClassification {
  bool is_pre_basic = false;
  bool is_basic = false;
  bool identity_present = false;
};

BasicClassification classify_basic(const Automaton& a);

Automaton add_identity(const Automaton& a);
Automaton drop_identity(const Automaton& a);

// B ⊆ A: every symbol of B is contained in some symbol of A.
bool extension_leq(const Automaton& b, const Automaton& a);

// Relabels states: state q becomes perm[q].
Symbol relabel(const Symbol& a, std::span<const State> perm);
Automaton relabel(const Automaton& a, std::span<const State> perm);

// Lexicographically minimal encoding of an automaton over all state
// relabelings. Equal codes <=> isomorphic automata (states relabeled,
// symbols compared as sets).
struct CanonicalForm {
  std::vector<std::uint16_t> code;

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;
  std::string to_hex() const;
};

inline constexpr std::size_t kMaxCanonicalStates = 8;

// Throws InvalidArgument when n > 8.
CanonicalForm canonical_form(const Automaton& a);
// Number of state permutations fixing the automaton (as a symbol set).
std::size_t automorphism_count(const Automaton& a);

// Seeded random CNFA. Each image gets one uniformly chosen state plus every
// other state independently with probability `density`; duplicates are
// dropped, so the result can have fewer than `symbol_count` symbols.
Automaton random_cnfa(std::size_t n, std::size_t symbol_count, double density,
                      std::uint64_t seed);

}  // namespace splitsync

template <>
struct std::hash<splitsync::Symbol> {
  std::size_t operator()(const splitsync::Symbol& s) const { return s.hash(); }
};

template <>
struct std::hash<splitsync::CanonicalForm> {
  std::size_t operator()(const splitsync::CanonicalForm& c) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : c.code) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

#endif  // SPLITSYNC_CORE_HPP
