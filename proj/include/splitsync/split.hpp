#ifndef SPLITSYNC_SPLIT_HPP
#define SPLITSYNC_SPLIT_HPP

// The Split transformation from CNFAs to DFAs.
//
// split_at(A, q, a) replaces a by one symbol per choice in q·a. Iterating it
// until every symbol is deterministic yields a DFA that does not depend on
// the order of steps; its alphabet is exactly the set of deterministic
// symbols b with b ⊆ a for some a ∈ Σ. full_split builds that set directly.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include "splitsync/core.hpp"

namespace splitsync {

inline constexpr unsigned long long kDefaultSplitBudget = 1'000'000;

// Budget for produced split symbols. SPLITSYNC_BUDGET overrides the default
// when set to a positive integer.
unsigned long long default_split_budget();

Automaton split_at(const Automaton& a, State q_split, std::size_t symbol_index);

struct SplitResult {
  Automaton automaton;
  // provenance[i] lists the indices of the original symbols that contain
  // automaton.symbol(i), in increasing order. Never empty.
  std::vector<std::vector<std::size_t>> provenance;
};

// Throws BudgetExceeded when Σ_a Π_q |qa| exceeds `budget`.
SplitResult full_split(const Automaton& a,
                       unsigned long long budget = default_split_budget());

// b ∈ Split(A) without building Split(A). Throws InvalidArgument when b is
// not deterministic or has the wrong state count.
bool gamma_contains(const Automaton& a, const Symbol& b);

// Exact |Γ| of Split(A) by inclusion–exclusion over symbol intersections
// (each set of sub-symbols is a product of images, and products intersect
// statewise). Throws BudgetExceeded if the count reaches 2^63.
unsigned long long split_alphabet_size(const Automaton& a);

// Enumerates every deterministic b ⊆ a exactly once. Order is
// lexicographic in (choice at state 1, ..., choice at state n), each choice
// ranging over the image in increasing state order, so the last state varies
// fastest.
class DetSubsymbols {
 public:
  explicit DetSubsymbols(const Symbol& a) : source_(a) {}

  class iterator {
   public:
    using value_type = Symbol;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    explicit iterator(const Symbol& source);

    const Symbol& operator*() const { return current_; }
    const Symbol* operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return done_ == o.done_; }

   private:
    void rebuild();

    const Symbol* source_ = nullptr;
    std::vector<std::vector<State>> options_;
    std::vector<std::size_t> cursor_;
    Symbol current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(source_); }
  iterator end() const { return iterator(); }

 private:
  const Symbol& source_;
};

inline DetSubsymbols det_subsymbols(const Symbol& a) { return DetSubsymbols(a); }

}  // namespace splitsync

#endif  // SPLITSYNC_SPLIT_HPP
