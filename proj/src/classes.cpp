#include "splitsync/classes.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

#include "splitsync/directing.hpp"
#include "splitsync/split.hpp"

namespace splitsync {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kMember: return "member";
    case Verdict::kNonMember: return "non-member";
    case Verdict::kUndecided: return "undecided";
  }
  return "unknown";
}

namespace {

// reach[q] = states reachable from q in G_a in zero or more steps.
std::vector<StateSet> reach_sets(const Symbol& a) {
  std::vector<StateSet> reach(a.n());
  for (std::size_t q = 0; q < a.n(); ++q) {
    StateSet r = StateSet::single(State(q));
    for (;;) {
      StateSet next = r | apply(a, r);
      if (next == r) break;
      r = next;
    }
    reach[q] = r;
  }
  return reach;
}

bool strongly_connected(const std::vector<StateSet>& reach, std::size_t n) {
  const StateSet all = StateSet::full(n);
  return std::all_of(reach.begin(), reach.end(),
                     [&](StateSet r) { return r == all; });
}

// Edge relation of the union digraph, as a symbol-like image list.
std::vector<StateSet> union_images(const Automaton& a) {
  std::vector<StateSet> img(a.n());
  for (const auto& s : a.symbols()) {
    for (std::size_t q = 0; q < a.n(); ++q) img[q] |= s.image(State(q));
  }
  return img;
}

std::vector<StateSet> reach_from_images(const std::vector<StateSet>& img) {
  const std::size_t n = img.size();
  std::vector<StateSet> reach(n);
  for (std::size_t q = 0; q < n; ++q) {
    StateSet r = StateSet::single(State(q));
    for (;;) {
      StateSet next = r;
      for (State p : r) next |= img[p];
      if (next == r) break;
      r = next;
    }
    reach[q] = r;
  }
  return reach;
}

}  // namespace

ClassVerdict<CyclicCertificate> is_cyclic(const Automaton& a) {
  ClassVerdict<CyclicCertificate> out;
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Symbol& s = a.symbol(i);
    if (n == 1) {
      out.verdict = Verdict::kMember;
      out.certificate = CyclicCertificate{i, {0}};
      return out;
    }
    // dp[mask] = set of endpoints v such that a path 0 -> ... -> v visits
    // exactly the states of mask.
    const std::size_t size = std::size_t(1) << n;
    std::vector<StateSet> dp(size);
    dp[1] = StateSet::single(0);
    for (std::size_t mask = 1; mask < size; ++mask) {
      if (!(mask & 1) || dp[mask].empty()) continue;
      for (State v : dp[mask]) {
        for (State w : s.image(v)) {
          if (mask & (std::size_t(1) << w)) continue;
          dp[mask | (std::size_t(1) << w)].insert(w);
        }
      }
    }
    for (State end : dp[size - 1]) {
      if (!s.image(end).contains(0)) continue;
      // Walk back through the table to recover the cycle.
      std::vector<State> order(n);
      std::size_t mask = size - 1;
      State cur = end;
      for (std::size_t pos = n; pos-- > 1;) {
        order[pos] = cur;
        const std::size_t prev_mask = mask & ~(std::size_t(1) << cur);
        for (State p : dp[prev_mask]) {
          if (s.image(p).contains(cur)) {
            cur = p;
            break;
          }
        }
        mask = prev_mask;
      }
      order[0] = cur;
      out.verdict = Verdict::kMember;
      out.certificate = CyclicCertificate{i, std::move(order)};
      return out;
    }
  }
  return out;
}

bool check_cyclic_certificate(const Automaton& a, const CyclicCertificate& c) {
  const std::size_t n = a.n();
  if (c.symbol >= a.size() || c.order.size() != n) return false;
  std::vector<State> sorted = c.order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted[i] != i) return false;
  }
  const Symbol& s = a.symbol(c.symbol);
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.image(c.order[i]).contains(c.order[(i + 1) % n])) return false;
  }
  return true;
}

ClassVerdict<OneClusterCertificate> is_one_cluster(const Automaton& a) {
  ClassVerdict<OneClusterCertificate> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto reach = reach_sets(a.symbol(i));
    // q lies in a terminal SCC iff everything it reaches reaches it back.
    std::optional<StateSet> terminal;
    bool unique = true;
    for (std::size_t q = 0; q < a.n() && unique; ++q) {
      bool is_terminal = true;
      for (State p : reach[q]) {
        if (!reach[p].contains(State(q))) {
          is_terminal = false;
          break;
        }
      }
      if (!is_terminal) continue;
      if (!terminal) {
        terminal = reach[q];
      } else if (*terminal != reach[q]) {
        unique = false;
      }
    }
    if (unique && terminal) {
      out.verdict = Verdict::kMember;
      out.certificate = OneClusterCertificate{i, terminal->min()};
      return out;
    }
  }
  return out;
}

bool is_one_cluster_pairwise(const Automaton& a) {
  for (const auto& s : a.symbols()) {
    const auto reach = reach_sets(s);
    bool ok = true;
    for (std::size_t q = 0; q < a.n() && ok; ++q) {
      for (std::size_t r = q + 1; r < a.n() && ok; ++r) {
        ok = !(reach[q] & reach[r]).empty();
      }
    }
    if (ok) return true;
  }
  return false;
}

namespace {

constexpr int kUnplaced = -1;

// x must come strictly before y whenever x != y; with a partial placement
// (unplaced states come after every placed one) this reports whether the
// requirement is already broken.
bool definitely_after(const std::vector<int>& pos, State x, State y) {
  if (x == y || pos[y] == kUnplaced) return false;
  return pos[x] == kUnplaced || pos[x] > pos[y];
}

// Some x ∈ first, y ∈ second with x forced after y.
bool block_broken(const std::vector<int>& pos, StateSet first, StateSet second) {
  for (State y : second) {
    for (State x : first) {
      if (definitely_after(pos, x, y)) return true;
    }
  }
  return false;
}

bool monotonic_prefix_ok(const Automaton& a, const std::vector<State>& prefix,
                         const std::vector<int>& pos) {
  const std::size_t n = a.n();
  for (const auto& s : a.symbols()) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      const State q = prefix[i];
      for (std::size_t r = 0; r < n; ++r) {
        // q' strictly after q: later in the prefix, or not yet placed.
        if (r == q) continue;
        if (pos[r] != kUnplaced && pos[r] < int(i)) continue;
        if (block_broken(pos, s.image(q), s.image(State(r)))) return false;
      }
    }
  }
  return true;
}

// Counts the cyclic constraints of one symbol that are already violated.
std::size_t orientable_violations(const Symbol& s,
                                  const std::vector<State>& prefix,
                                  const std::vector<int>& pos, std::size_t n) {
  std::size_t bad = 0;
  const std::size_t checkable = prefix.size() == n ? n : prefix.size() - 1;
  for (std::size_t i = 0; i < checkable; ++i) {
    const State q = prefix[i];
    const State next = prefix[(i + 1) % n];
    if (block_broken(pos, s.image(q), s.image(next))) ++bad;
  }
  return bad;
}

bool orientable_prefix_ok(const Automaton& a, const std::vector<State>& prefix,
                          const std::vector<int>& pos) {
  if (prefix.empty()) return true;
  for (const auto& s : a.symbols()) {
    if (orientable_violations(s, prefix, pos, a.n()) > 1) return false;
  }
  return true;
}

template <class Ok>
bool search_orders(std::size_t n, std::vector<State>& prefix,
                   std::vector<int>& pos, const Ok& ok) {
  if (prefix.size() == n) return true;
  for (std::size_t q = 0; q < n; ++q) {
    if (pos[q] != kUnplaced) continue;
    pos[q] = int(prefix.size());
    prefix.push_back(State(q));
    if (ok(prefix, pos) && search_orders(n, prefix, pos, ok)) return true;
    prefix.pop_back();
    pos[q] = kUnplaced;
  }
  return false;
}

std::vector<int> positions_of(const std::vector<State>& order, std::size_t n) {
  std::vector<int> pos(n, kUnplaced);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= n || pos[order[i]] != kUnplaced) return {};
    pos[order[i]] = int(i);
  }
  return pos;
}

void require_search_size(std::size_t n) {
  if (n > kMaxOrderSearchStates) {
    throw InvalidArgument("order search supports at most " +
                          std::to_string(kMaxOrderSearchStates) + " states");
  }
}

}  // namespace

bool check_monotonic_order(const Automaton& a, const std::vector<State>& order) {
  if (order.size() != a.n()) return false;
  const auto pos = positions_of(order, a.n());
  if (pos.empty()) return false;
  for (const auto& s : a.symbols()) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const State maxi = *std::max_element(
            s.image(order[i]).begin(), s.image(order[i]).end(),
            [&](State x, State y) { return pos[x] < pos[y]; });
        const State minj = *std::min_element(
            s.image(order[j]).begin(), s.image(order[j]).end(),
            [&](State x, State y) { return pos[x] < pos[y]; });
        if (pos[maxi] > pos[minj]) return false;
      }
    }
  }
  return true;
}

ClassVerdict<std::vector<State>> is_monotonic(const Automaton& a) {
  require_search_size(a.n());
  ClassVerdict<std::vector<State>> out;
  std::vector<State> prefix;
  std::vector<int> pos(a.n(), kUnplaced);
  auto ok = [&](const std::vector<State>& p, const std::vector<int>& ps) {
    return monotonic_prefix_ok(a, p, ps);
  };
  if (search_orders(a.n(), prefix, pos, ok)) {
    out.verdict = Verdict::kMember;
    out.certificate = prefix;
  }
  return out;
}

bool check_orientable_order(const Automaton& a, const std::vector<State>& order) {
  const std::size_t n = a.n();
  if (order.size() != n) return false;
  const auto pos = positions_of(order, n);
  if (pos.empty()) return false;
  auto rank_max = [&](StateSet s) {
    int m = -1;
    for (State x : s) m = std::max(m, pos[x]);
    return m;
  };
  auto rank_min = [&](StateSet s) {
    int m = int(n);
    for (State x : s) m = std::min(m, pos[x]);
    return m;
  };
  for (const auto& s : a.symbols()) {
    std::size_t violated = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank_max(s.image(order[i])) > rank_min(s.image(order[(i + 1) % n]))) {
        ++violated;
      }
    }
    if (violated > 1) return false;
  }
  return true;
}

ClassVerdict<std::vector<State>> is_orientable(const Automaton& a) {
  require_search_size(a.n());
  ClassVerdict<std::vector<State>> out;
  std::vector<State> prefix;
  std::vector<int> pos(a.n(), kUnplaced);
  auto ok = [&](const std::vector<State>& p, const std::vector<int>& ps) {
    return orientable_prefix_ok(a, p, ps);
  };
  if (search_orders(a.n(), prefix, pos, ok)) {
    out.verdict = Verdict::kMember;
    out.certificate = prefix;
  }
  return out;
}

ClassVerdict<EulerianCertificate> is_strongly_eulerian(const Automaton& a) {
  ClassVerdict<EulerianCertificate> out;
  if (a.size() == 0) return out;
  const std::size_t n = a.n();
  EulerianCertificate cert;
  for (const auto& s : a.symbols()) {
    std::vector<std::size_t> in(n, 0), outd(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
      outd[q] = s.image(State(q)).size();
      for (State p : s.image(State(q))) ++in[p];
    }
    // All in- and out-degrees must share one value k.
    const auto same = [&](std::size_t d) { return d == outd[0]; };
    if (!std::all_of(outd.begin(), outd.end(), same) ||
        !std::all_of(in.begin(), in.end(), same)) {
      return out;
    }
    if (!strongly_connected(reach_sets(s), n)) return out;
    cert.degree.push_back(outd[0]);
  }
  out.verdict = Verdict::kMember;
  out.certificate = std::move(cert);
  return out;
}

bool is_strongly_connected_underlying(const Automaton& a) {
  return strongly_connected(reach_from_images(union_images(a)), a.n());
}

std::size_t default_monoid_cap() {
  if (const char* env = std::getenv("SPLITSYNC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::size_t(v);
  }
  return kDefaultMonoidCap;
}

namespace {

using Element = std::array<StateSet::Mask, kMaxStates>;

struct ElementHash {
  std::size_t operator()(const Element& e) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

// Closure of the generators under composition (words of length >= 1).
// Returns nullopt when the cap is exceeded.
std::optional<std::vector<Element>> monoid_closure(const Automaton& a,
                                                   std::size_t cap) {
  const std::size_t n = a.n();
  std::vector<Element> gens;
  for (const auto& s : a.symbols()) {
    Element e{};
    for (std::size_t q = 0; q < n; ++q) e[q] = s.image(State(q)).bits();
    gens.push_back(e);
  }
  std::unordered_set<Element, ElementHash> seen;
  std::vector<Element> elements;
  for (const auto& g : gens) {
    if (seen.insert(g).second) elements.push_back(g);
  }
  for (std::size_t head = 0; head < elements.size(); ++head) {
    if (elements.size() > cap) return std::nullopt;
    const Element m = elements[head];
    for (const auto& g : gens) {
      Element prod{};
      for (std::size_t q = 0; q < n; ++q) {
        StateSet::Mask img = 0;
        for (State p : StateSet(m[q])) img |= g[p];
        prod[q] = img;
      }
      if (seen.insert(prod).second) elements.push_back(prod);
    }
  }
  if (elements.size() > cap) return std::nullopt;
  return elements;
}

// Iterates q·m^k until the sequence repeats; true iff it settles on a fixed
// point (of size one when required).
bool settles(const Element& m, State q, std::size_t n, bool require_single) {
  StateSet cur = StateSet::single(q);
  std::unordered_set<StateSet::Mask> visited;
  for (;;) {
    StateSet next;
    for (State p : cur) next |= StateSet(m[p]);
    if (next == cur) return !require_single || cur.is_singleton();
    if (!visited.insert(cur.bits()).second) return false;
    cur = next;
    (void)n;
  }
}

}  // namespace

AperiodicConditionResult satisfies_aperiodic_condition(const Automaton& a, std::size_t cap) {
  AperiodicConditionResult out;
  out.strongly_connected = is_strongly_connected_underlying(a);
  const auto elements = monoid_closure(a, cap);
  if (!elements) {
    out.verdict = Verdict::kUndecided;
    out.reason = "transition monoid exceeds cap of " + std::to_string(cap);
    return out;
  }
  // The empty word acts as the identity, which settles trivially.
  out.monoid_size = elements->size() + 1;
  for (const auto& m : *elements) {
    for (std::size_t q = 0; q < a.n(); ++q) {
      if (!settles(m, State(q), a.n(), true)) return out;
    }
  }
  out.verdict = Verdict::kMember;
  return out;
}

AperiodicResult dfa_is_aperiodic(const Automaton& dfa, std::size_t cap) {
  if (!dfa.is_dfa()) {
    throw InvalidArgument("dfa_is_aperiodic expects a deterministic automaton");
  }
  AperiodicResult out;
  const auto elements = monoid_closure(dfa, cap);
  if (!elements) {
    out.verdict = Verdict::kUndecided;
    out.reason = "transition monoid exceeds cap of " + std::to_string(cap);
    return out;
  }
  out.monoid_size = elements->size() + 1;
  for (const auto& m : *elements) {
    for (std::size_t q = 0; q < dfa.n(); ++q) {
      if (!settles(m, State(q), dfa.n(), false)) return out;
    }
  }
  out.verdict = Verdict::kMember;
  return out;
}

std::size_t one_cluster_bound(std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>(2 * m * m - 7 * m + 7);
}

std::size_t eulerian_bound(std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>((m - 2) * (m - 1) + 1);
}

std::size_t aperiodic_bound(std::size_t n) { return n * (n + 1) / 6; }

namespace {

std::vector<BoundEntry> bounds_from(const ClassReport& r) {
  const std::size_t n = r.n;
  std::vector<BoundEntry> out;
  if (r.monotonic.member()) out.push_back({"monotonic", n - 1});
  if (r.strongly_eulerian.member()) out.push_back({"strongly_eulerian", eulerian_bound(n)});
  if (r.cyclic.member()) out.push_back({"cyclic", (n - 1) * (n - 1)});
  if (r.orientable.member()) out.push_back({"orientable", (n - 1) * (n - 1)});
  if (r.one_cluster.member()) out.push_back({"one_cluster", one_cluster_bound(n)});
  if (r.aperiodic_condition.verdict == Verdict::kMember && r.aperiodic_condition.strongly_connected) {
    out.push_back({"aperiodic", aperiodic_bound(n)});
  }
  out.push_back({"general", cubic_bound(n)});
  out.push_back({"imreh", imreh_bound(n)});
  return out;
}

BoundEntry tightest_of(const std::vector<BoundEntry>& bounds) {
  return *std::min_element(bounds.begin(), bounds.end(),
                           [](const BoundEntry& x, const BoundEntry& y) {
                             return x.value < y.value;
                           });
}

}  // namespace

ClassReport classify(const Automaton& a) {
  ClassReport r;
  r.n = a.n();
  r.cyclic = is_cyclic(a);
  r.one_cluster = is_one_cluster(a);
  if (a.n() <= kMaxOrderSearchStates) {
    r.monotonic = is_monotonic(a);
    r.orientable = is_orientable(a);
  } else {
    r.monotonic.verdict = Verdict::kUndecided;
    r.monotonic.reason = "order search limited to 10 states";
    r.orientable.verdict = Verdict::kUndecided;
    r.orientable.reason = "order search limited to 10 states";
  }
  r.strongly_eulerian = is_strongly_eulerian(a);
  r.aperiodic_condition = satisfies_aperiodic_condition(a);
  r.bounds = bounds_from(r);
  r.tightest = tightest_of(r.bounds);
  return r;
}

std::vector<BoundEntry> best_bound(const Automaton& a, BoundEntry* tightest) {
  const auto r = classify(a);
  if (tightest) *tightest = r.tightest;
  return r.bounds;
}

DegreeProfile multigraph_degrees(std::size_t n,
                                 const std::vector<Symbol>& dfa_symbols) {
  DegreeProfile d;
  d.in.assign(n, 0);
  d.out.assign(n, 0);
  std::vector<StateSet> img(n);
  for (const auto& s : dfa_symbols) {
    for (std::size_t q = 0; q < n; ++q) {
      for (State p : s.image(State(q))) {
        ++d.out[q];
        ++d.in[p];
        img[q].insert(p);
      }
    }
  }
  d.strongly_connected = strongly_connected(reach_from_images(img), n);
  return d;
}

}  // namespace splitsync
