#ifndef SPLITSYNC_DIRECTING_HPP
#define SPLITSYNC_DIRECTING_HPP

// Shortest D3-directing words.
//
// A word w is D3-directing for a CNFA when some state q_s lies in q·w for
// every state q. For DFAs this is an ordinary synchronizing word. Three
// engines compute the exact shortest length d3(A):
//
//   d3_via_split  builds Split(A) and runs the subset BFS on that DFA;
//   d3_implicit   runs the same BFS but generates successors of a subset S
//                 under a as {f(q) : q ∈ S} over choice functions f ⊆ a;
//   d3_oracle     searches tuples (1·w, ..., n·w) straight from the
//                 definition, for n <= 4.
//
// All three report witnesses over the original alphabet.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitsync/core.hpp"
#include "splitsync/split.hpp"

namespace splitsync {

enum class Engine { kDfa, kSplit, kImplicit, kOracle };

std::string to_string(Engine e);

struct DirectingReport {
  bool directing = false;
  std::optional<std::size_t> length;
  std::optional<Word> witness;
  std::optional<State> sync_state;
  Engine engine = Engine::kDfa;
};

// Precomputed subset images of deterministic symbols: S·a is the OR of two
// byte-indexed table lookups.
class SubsetTables {
 public:
  explicit SubsetTables(const Automaton& dfa);
  SubsetTables(std::size_t n, const std::vector<Symbol>& symbols);

  std::size_t n() const { return n_; }
  std::size_t size() const { return tables_.size(); }
  StateSet::Mask step(std::size_t letter, StateSet::Mask s) const {
    const auto& t = tables_[letter];
    return t.lo[s & 0xFF] | t.hi[s >> 8];
  }
  void push_back(const Symbol& a);
  void pop_back() { tables_.pop_back(); }

 private:
  struct Table {
    std::array<StateSet::Mask, 256> lo;
    std::array<StateSet::Mask, 256> hi;
  };
  std::size_t n_;
  std::vector<Table> tables_;
};

// Length of a shortest synchronizing word, or nullopt when none exists.
// Scratch buffers are reused between calls on one thread.
std::optional<std::size_t> shortest_sync_length(const SubsetTables& tables);

// BFS over subsets of a DFA starting from Q. Throws InvalidArgument on
// nondeterministic input.
DirectingReport dfa_shortest_sync(const Automaton& dfa);

DirectingReport d3_via_split(const Automaton& a,
                             unsigned long long budget = default_split_budget());

inline constexpr unsigned long long kDefaultChoiceBudget = 1'000'000;

// `budget` caps the successor-generation work for a single (subset, symbol)
// pair; exceeding it throws BudgetExceeded.
DirectingReport d3_implicit(const Automaton& a,
                            unsigned long long budget = kDefaultChoiceBudget);

inline constexpr std::size_t kMaxOracleStates = 4;

// Throws InvalidArgument when n > 4.
DirectingReport d3_oracle(const Automaton& a);

struct VerifyResult {
  bool accepted = false;
  StateSet sync_states;
  // end_sets[q] = q·w.
  std::vector<StateSet> end_sets;
};

VerifyResult verify_d3(const Automaton& a, const Word& w);

// ⌊(n^3 - n)/6⌋ and ½n(n-1)(n-2)+1.
std::size_t cubic_bound(std::size_t n);
std::size_t imreh_bound(std::size_t n);

}  // namespace splitsync

#endif  // SPLITSYNC_DIRECTING_HPP
