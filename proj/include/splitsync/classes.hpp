#ifndef SPLITSYNC_CLASSES_HPP
#define SPLITSYNC_CLASSES_HPP

// Detectors for CNFA classes with improved directing-length bounds, plus the
// DFA-side checks needed to confirm each class survives Split.
//
// Every positive verdict carries a certificate that the matching check_*
// function (or the definition) re-validates.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitsync/core.hpp"

namespace splitsync {

enum class Verdict { kMember, kNonMember, kUndecided };

std::string to_string(Verdict v);

struct CyclicCertificate {
  std::size_t symbol = 0;
  // order[i+1] ∈ order[i]·a and order[0] ∈ order[n-1]·a.
  std::vector<State> order;
};

struct OneClusterCertificate {
  std::size_t symbol = 0;
  State sink = 0;  // reachable under a from every state
};

struct EulerianCertificate {
  // degree[i] = common in/out degree k of G_a for symbol i.
  std::vector<std::size_t> degree;
};

template <class Certificate>
struct ClassVerdict {
  Verdict verdict = Verdict::kNonMember;
  std::optional<Certificate> certificate;
  std::string reason;  // set for kUndecided

  bool member() const { return verdict == Verdict::kMember; }
};

// Hamiltonian cycle in some G_a, by subset × endpoint dynamic programming.
ClassVerdict<CyclicCertificate> is_cyclic(const Automaton& a);
bool check_cyclic_certificate(const Automaton& a, const CyclicCertificate& c);

// Some G_a has exactly one terminal strongly connected component.
ClassVerdict<OneClusterCertificate> is_one_cluster(const Automaton& a);
// The pairwise formulation: some a with reach*(q) ∩ reach*(q') ≠ ∅ for all
// pairs. Kept as an independent cross-check.
bool is_one_cluster_pairwise(const Automaton& a);

inline constexpr std::size_t kMaxOrderSearchStates = 10;

// order[i] is the i-th smallest state. The condition
// max{qa} <= min{q'a} is required for strictly ordered pairs q < q'.
bool check_monotonic_order(const Automaton& a, const std::vector<State>& order);
// Throws InvalidArgument for n > 10.
ClassVerdict<std::vector<State>> is_monotonic(const Automaton& a);

// order = q_1 < ... < q_n. For each symbol at most one of the n constraints
// max{q_i a} <= min{q_{i+1} a} (indices mod n) may fail.
bool check_orientable_order(const Automaton& a, const std::vector<State>& order);
// Throws InvalidArgument for n > 10.
ClassVerdict<std::vector<State>> is_orientable(const Automaton& a);

// Every G_a (a simple edge set) is strongly connected and regular: all in-
// and out-degrees equal one value k_a. Split then has every degree equal to
// the sum of k_a^n.
ClassVerdict<EulerianCertificate> is_strongly_eulerian(const Automaton& a);

bool is_strongly_connected_underlying(const Automaton& a);

inline constexpr std::size_t kDefaultMonoidCap = 1'000'000;
// SPLITSYNC_BUDGET overrides the cap as well.
std::size_t default_monoid_cap();

struct AperiodicConditionResult {
  Verdict verdict = Verdict::kNonMember;
  std::size_t monoid_size = 0;
  bool strongly_connected = false;
  std::string reason;
};

// For every element m of the transition monoid and every q there is k >= 0
// with q·m^k = q·m^(k+1) and |q·m^k| = 1.
AperiodicConditionResult satisfies_aperiodic_condition(const Automaton& a,
                            std::size_t cap = default_monoid_cap());

struct AperiodicResult {
  Verdict verdict = Verdict::kNonMember;
  std::size_t monoid_size = 0;
  std::string reason;
};

AperiodicResult dfa_is_aperiodic(const Automaton& dfa,
                                 std::size_t cap = default_monoid_cap());

struct BoundEntry {
  std::string bound_class;
  std::size_t value = 0;
};

struct ClassReport {
  std::size_t n = 0;
  ClassVerdict<CyclicCertificate> cyclic;
  ClassVerdict<OneClusterCertificate> one_cluster;
  ClassVerdict<std::vector<State>> monotonic;
  ClassVerdict<std::vector<State>> orientable;
  ClassVerdict<EulerianCertificate> strongly_eulerian;
  AperiodicConditionResult aperiodic_condition;
  std::vector<BoundEntry> bounds;
  BoundEntry tightest;
};

ClassReport classify(const Automaton& a);

// Bounds list + tightest. Always contains "general" and "imreh".
std::vector<BoundEntry> best_bound(const Automaton& a, BoundEntry* tightest = nullptr);

std::size_t one_cluster_bound(std::size_t n);
std::size_t eulerian_bound(std::size_t n);
std::size_t aperiodic_bound(std::size_t n);

// Per-state (in, out) degrees of the underlying multigraph of a DFA whose
// symbols are listed with repetition allowed.
struct DegreeProfile {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
  bool strongly_connected = false;
};
DegreeProfile multigraph_degrees(std::size_t n, const std::vector<Symbol>& dfa_symbols);

}  // namespace splitsync

#endif  // SPLITSYNC_CLASSES_HPP
