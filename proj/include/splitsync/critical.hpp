#ifndef SPLITSYNC_CRITICAL_HPP
#define SPLITSYNC_CRITICAL_HPP

// Critical automata: CNFAs whose shortest D3-directing word has length
// exactly (n-1)^2.
//
// Every critical CNFA splits to a critical DFA, so critical CNFAs are found
// by inverting Split on the known critical DFAs. For a DFA D the symbol
// graph G(D) joins two symbols that differ in exactly one state; merging the
// endpoints of any edge subset E' gives a CNFA N(D, E') that splits back to
// D. When G(D) has no 3- or 4-cycles these are all pre-basic CNFAs that
// split to D.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitsync/core.hpp"
#include "splitsync/format.hpp"

namespace splitsync {

// (n-1)^2.
std::size_t critical_length(std::size_t n);

struct SymbolEdge {
  std::size_t first = 0;   // symbol index, first < second
  std::size_t second = 0;
  State differing = 0;     // the single state where the two symbols differ

  bool operator==(const SymbolEdge&) const = default;
};

struct SymbolGraph {
  std::size_t node_count = 0;
  std::vector<SymbolEdge> edges;  // sorted by (first, second)

  bool has_edge(std::size_t a, std::size_t b) const;
};

// Throws InvalidArgument on nondeterministic input.
SymbolGraph symbol_graph(const Automaton& dfa);

// True iff the graph has a cycle of length 3 or 4.
bool has_short_cycle(const SymbolGraph& g);

using EdgeSubset = std::vector<std::pair<std::size_t, std::size_t>>;

// N(D, E'). Unmerged symbols keep their order; each merged symbol a ∪ b is
// placed right after the position of its lower endpoint. Throws
// InvalidArgument if some pair is not an edge of G(D).
Automaton merge_cnfa(const Automaton& dfa, const EdgeSubset& edges);

struct InverseSplit {
  std::vector<Automaton> automata;
  // No 3/4-cycles in G(D): the list is every pre-basic N with Split(N) = D.
  bool complete = false;
  std::size_t edge_count = 0;
};

// All 2^|E| automata N(D, E'), E' enumerated in bitmask order over the
// sorted edge list.
InverseSplit inverse_split_enumerate(const Automaton& dfa);

// Every pre-basic CNFA N on two states with Split(N) = D, by exhaustion of
// the 2^9 subsets of 2-state symbols. Throws InvalidArgument unless n == 2.
std::vector<Automaton> inverse_split_bruteforce(const Automaton& dfa);

struct CriticalFamily {
  std::vector<Automaton> cnfas;  // basic CNFAs N with Split(N^+) = D^+
  std::size_t edge_count = 0;    // |E(G(D^+))|
  bool complete = false;
  bool used_bruteforce = false;
};

// Throws InvalidArgument if D is not a basic DFA with d(D) = (n-1)^2.
CriticalFamily basic_critical_from_dfa(const Automaton& dfa);

struct SearchProgress {
  std::size_t branches_done = 0;
  std::size_t branches_total = 0;
  std::size_t nodes = 0;
  std::size_t found = 0;
};

struct CriticalSearchOptions {
  std::optional<std::size_t> target;  // default (n-1)^2
  std::size_t jobs = 1;
  // When set, finished top-level branches and their results are appended
  // here, and a rerun with the same file skips them.
  std::string checkpoint_path;
  std::function<void(const SearchProgress&)> progress;
};

struct CriticalSearchResult {
  std::size_t n = 0;
  std::size_t target = 0;
  // One canonical representative per isomorphism class, sorted by canonical
  // code.
  std::vector<Automaton> dfas;
  std::size_t labeled_count = 0;
  std::size_t nodes = 0;
};

inline constexpr std::size_t kMaxSearchStates = 4;

// Basic DFAs with shortest synchronizing length exactly `target`.
// Throws InvalidArgument unless 2 <= n <= 4.
CriticalSearchResult critical_dfa_search(std::size_t n,
                                         const CriticalSearchOptions& options = {});

inline constexpr std::size_t kMaxFixedSearchStates = 6;

// Every basic DFA with exactly k symbols (k = 2 or 3) whose shortest
// synchronizing word has length `target`, one per isomorphism class.
// Throws InvalidArgument unless 2 <= n <= 6.
CriticalSearchResult fixed_alphabet_search(std::size_t n, std::size_t k,
                                           std::size_t target, std::size_t jobs = 1);

// Decodes a canonical code back into the automaton it names.
Automaton from_canonical(const CanonicalForm& c);

// Number of distinct labeled copies n!/|Aut(A)|.
std::size_t labeled_copies(const Automaton& a);

// ---------------------------------------------------------------------------
// Catalog of named critical automata.

enum class Provenance { kGenerator, kSearch, kDataFile };
std::string to_string(Provenance p);

struct CatalogEntry {
  std::string name;
  AutomatonFile file;
  std::size_t expected_length = 0;
  Provenance provenance = Provenance::kGenerator;
};

// qa = q+1 (q < n), na = 1; 1b = 2, qb = q (q > 1).
Automaton cerny(std::size_t n);
// cerny(n) with 1b = {1,2}.
Automaton cerny_cnfa(std::size_t n);

// Catalog directory: SPLITSYNC_CATALOG_DIR if set, otherwise the data
// directory the library was built with.
std::string default_catalog_dir();

struct CatalogOptions {
  std::string dir = default_catalog_dir();
};

// Names: cerny, cerny_cnfa (need n), a3, a4, c4, t42, roman, kari.
// Entries from data files are re-verified on load. Throws InvalidArgument
// for unknown names and CatalogError for missing files or failed
// verification.
CatalogEntry catalog(const std::string& name, std::optional<std::size_t> n = {},
                     const CatalogOptions& options = {});

std::vector<std::string> catalog_names();

// ---------------------------------------------------------------------------
// Census of basic critical CNFAs on n states.

struct CensusSource {
  std::string label;  // catalog name or "search#k"
  Automaton dfa;
  std::size_t edge_count = 0;
  std::size_t cnfa_count = 0;  // family size before isomorphism dedup
  bool complete = false;
  bool used_bruteforce = false;

  bool operator==(const CensusSource&) const = default;
};

struct CensusMember {
  Automaton cnfa;
  std::size_t source = 0;          // index into sources
  std::size_t d3 = 0;              // by d3_implicit
  std::optional<std::size_t> d3_oracle;
  bool verified = false;

  bool operator==(const CensusMember&) const = default;
};

struct CensusReport {
  std::size_t n = 0;
  std::vector<CensusSource> sources;  // critical DFAs, one per iso class
  std::vector<CensusMember> members;  // one per iso class of CNFA
  std::size_t dfa_count_labeled = 0;
  std::size_t dfa_count_iso = 0;
  std::size_t cnfa_count_labeled = 0;
  std::size_t cnfa_count_iso = 0;
  // Family members isomorphic to an earlier member (raw total - iso).
  std::size_t isomorphic_collisions = 0;
  bool complete = true;
  bool all_verified = true;

  bool operator==(const CensusReport&) const = default;
};

struct CensusOptions {
  std::size_t jobs = 1;
  CatalogOptions catalog;
  CriticalSearchOptions search;
};

// n <= 4: critical DFAs by search; n = 5, 6: from the catalog (cerny plus
// roman / kari). Throws CatalogError when catalog data is missing and
// InvalidArgument for other n.
CensusReport census(std::size_t n, const CensusOptions& options = {});

}  // namespace splitsync

#endif  // SPLITSYNC_CRITICAL_HPP
