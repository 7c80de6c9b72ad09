#ifndef SPLITSYNC_TESTS_SUPPORT_HPP
#define SPLITSYNC_TESTS_SUPPORT_HPP

// Test-only oracles and random class generators. The oracles work on words
// directly and share no code with the library engines.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "splitsync/classes.hpp"
#include "splitsync/core.hpp"
#include "splitsync/directing.hpp"
#include "splitsync/format.hpp"
#include "splitsync/split.hpp"

namespace splitsync::support {

// Per-state images q·w, computed one letter at a time.
inline std::vector<StateSet> word_images(const Automaton& a, const Word& w) {
  std::vector<StateSet> cur;
  for (std::size_t q = 0; q < a.n(); ++q) cur.push_back(StateSet::single(State(q)));
  for (auto letter : w) {
    for (auto& s : cur) {
      StateSet next;
      for (State p : s) next |= a.symbol(letter).image(p);
      s = next;
    }
  }
  return cur;
}

inline bool is_d3_word(const Automaton& a, const Word& w) {
  StateSet common = StateSet::full(a.n());
  for (auto s : word_images(a, w)) common &= s;
  return !common.empty();
}

// Shortest D3-directing length by iterative deepening over words, up to
// `max_len`; nullopt when no word that short exists.
inline std::optional<std::size_t> brute_d3(const Automaton& a, std::size_t max_len) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    Word w(len, 0);
    for (;;) {
      if (is_d3_word(a, w)) return len;
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == a.size()) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return std::nullopt;
}

// Every symbol on n states: all combinations of nonempty images.
inline std::vector<Symbol> all_symbols(std::size_t n) {
  const std::size_t per_state = (1u << n) - 1;
  std::size_t total = 1;
  for (std::size_t q = 0; q < n; ++q) total *= per_state;
  std::vector<Symbol> out;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<StateSet> images;
    std::size_t rest = code;
    for (std::size_t q = 0; q < n; ++q) {
      images.emplace_back(StateSet::Mask(rest % per_state + 1));
      rest /= per_state;
    }
    out.emplace_back(std::move(images));
  }
  return out;
}

inline std::vector<State> random_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<State> order(n);
  std::iota(order.begin(), order.end(), State(0));
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

inline StateSet random_extra(std::size_t n, std::mt19937_64& rng, double p) {
  std::bernoulli_distribution coin(p);
  StateSet s;
  for (std::size_t q = 0; q < n; ++q) {
    if (coin(rng)) s.insert(State(q));
  }
  return s;
}

inline Symbol random_symbol(std::size_t n, std::mt19937_64& rng, double p) {
  std::uniform_int_distribution<int> pick(0, int(n) - 1);
  std::vector<StateSet> images;
  for (std::size_t q = 0; q < n; ++q) {
    images.push_back(StateSet::single(State(pick(rng))) | random_extra(n, rng, p));
  }
  return Symbol(std::move(images));
}

// Symbol 0 contains the cycle order[0] -> order[1] -> ... -> order[0].
inline Automaton gen_cyclic(std::size_t n, std::mt19937_64& rng) {
  const auto order = random_order(n, rng);
  std::vector<StateSet> img(n);
  for (std::size_t i = 0; i < n; ++i) {
    img[order[i]] = StateSet::single(order[(i + 1) % n]) | random_extra(n, rng, 0.2);
  }
  std::vector<Symbol> syms{Symbol(img)};
  std::uniform_int_distribution<int> k(0, 2);
  for (int i = k(rng); i > 0; --i) syms.push_back(random_symbol(n, rng, 0.25));
  return Automaton::from_symbols_dedup(n, std::move(syms));
}

// Symbol 0 holds an in-tree towards a sink, so its only closed strongly
// connected component contains the sink.
inline Automaton gen_one_cluster(std::size_t n, std::mt19937_64& rng) {
  const auto order = random_order(n, rng);
  std::vector<StateSet> img(n);
  img[order[0]] = random_extra(n, rng, 0.3);
  if (img[order[0]].empty()) img[order[0]] = StateSet::single(order[0]);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    img[order[i]] = StateSet::single(order[parent(rng)]) | random_extra(n, rng, 0.2);
  }
  std::vector<Symbol> syms{Symbol(img)};
  std::uniform_int_distribution<int> k(0, 2);
  for (int i = k(rng); i > 0; --i) syms.push_back(random_symbol(n, rng, 0.25));
  return Automaton::from_symbols_dedup(n, std::move(syms));
}

// Images are position intervals [lo_i, hi_i] with hi_i <= lo_{i+1}.
inline Symbol monotone_symbol(const std::vector<State>& order, std::mt19937_64& rng) {
  const std::size_t n = order.size();
  std::uniform_int_distribution<int> pos(0, int(n) - 1);
  std::vector<int> cuts(2 * n);
  for (auto& c : cuts) c = pos(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<StateSet> img(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int p = cuts[2 * i]; p <= cuts[2 * i + 1]; ++p) img[order[i]].insert(order[p]);
  }
  return Symbol(std::move(img));
}

struct OrderedSample {
  Automaton automaton;
  std::vector<State> order;
};

inline OrderedSample gen_monotonic(std::size_t n, std::mt19937_64& rng) {
  const auto order = random_order(n, rng);
  std::vector<Symbol> syms;
  std::uniform_int_distribution<int> k(1, 3);
  for (int i = k(rng); i > 0; --i) syms.push_back(monotone_symbol(order, rng));
  return {Automaton::from_symbols_dedup(n, std::move(syms)), order};
}

// Monotone symbols with their targets rotated along the order. Callers keep
// only samples that pass the orientation check for `order`.
inline OrderedSample gen_orientable_candidate(std::size_t n, std::mt19937_64& rng) {
  const auto order = random_order(n, rng);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  std::uniform_int_distribution<std::size_t> shift(0, n - 1);
  std::vector<Symbol> syms;
  std::uniform_int_distribution<int> k(1, 3);
  for (int i = k(rng); i > 0; --i) {
    const Symbol m = monotone_symbol(order, rng);
    const std::size_t r = shift(rng);
    std::vector<StateSet> img(n);
    for (std::size_t q = 0; q < n; ++q) {
      for (State t : m.image(State(q))) img[q].insert(order[(position[t] + r) % n]);
    }
    syms.emplace_back(std::move(img));
  }
  return {Automaton::from_symbols_dedup(n, std::move(syms)), order};
}

// Circulant symbols: q -> order[pos(q) + s] for s in a shift set that
// contains 1, so every G_a is strongly connected and |S|-regular.
inline Automaton gen_strongly_eulerian(std::size_t n, std::mt19937_64& rng) {
  const auto order = random_order(n, rng);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<Symbol> syms;
  std::uniform_int_distribution<int> k(1, 3);
  std::bernoulli_distribution coin(0.4);
  for (int i = k(rng); i > 0; --i) {
    std::vector<std::size_t> shifts{1};
    for (std::size_t s = 0; s < n; ++s) {
      if (s != 1 && coin(rng)) shifts.push_back(s);
    }
    std::vector<StateSet> img(n);
    for (std::size_t q = 0; q < n; ++q) {
      for (auto s : shifts) img[q].insert(order[(position[q] + s) % n]);
    }
    syms.emplace_back(std::move(img));
  }
  return Automaton::from_symbols_dedup(n, std::move(syms));
}

// Symbols that fix a state or move it strictly down a random order. Callers
// keep only samples the aperiodicity-condition detector accepts.
inline Automaton gen_aperiodic_candidate(std::size_t n, std::mt19937_64& rng) {
  const auto order = random_order(n, rng);
  std::bernoulli_distribution fix(0.3);
  std::vector<Symbol> syms;
  std::uniform_int_distribution<int> k(1, 3);
  for (int i = k(rng); i > 0; --i) {
    std::vector<StateSet> img(n);
    img[order[0]] = StateSet::single(order[0]);
    for (std::size_t j = 1; j < n; ++j) {
      if (fix(rng)) {
        img[order[j]] = StateSet::single(order[j]);
        continue;
      }
      std::uniform_int_distribution<std::size_t> below(0, j - 1);
      img[order[j]].insert(order[below(rng)]);
      for (std::size_t t = 0; t < j; ++t) {
        if (fix(rng)) img[order[j]].insert(order[t]);
      }
    }
    syms.emplace_back(std::move(img));
  }
  return Automaton::from_symbols_dedup(n, std::move(syms));
}

// Deterministic sub-symbols of every symbol, with repetition.
inline std::vector<Symbol> split_multiset(const Automaton& a) {
  std::vector<Symbol> out;
  for (const auto& s : a.symbols()) {
    for (const auto& b : det_subsymbols(s)) out.push_back(b);
  }
  return out;
}

// DFA-side class oracles. Each works on the maps q -> qa directly.

using Map = std::vector<State>;

inline std::vector<Map> maps_of(const Automaton& dfa) {
  std::vector<Map> out;
  for (const auto& s : dfa.symbols()) {
    Map m;
    for (std::size_t q = 0; q < dfa.n(); ++q) m.push_back(s.image(State(q)).min());
    out.push_back(m);
  }
  return out;
}

inline bool dfa_cyclic(const Automaton& dfa) {
  for (const auto& m : maps_of(dfa)) {
    std::set<State> seen;
    State q = 0;
    for (std::size_t i = 0; i < dfa.n(); ++i) {
      seen.insert(q);
      q = m[q];
    }
    if (q == 0 && seen.size() == dfa.n()) return true;
  }
  return false;
}

// A functional graph has one terminal component iff it has one cycle.
inline bool dfa_one_cluster(const Automaton& dfa) {
  const std::size_t n = dfa.n();
  for (const auto& m : maps_of(dfa)) {
    std::set<State> on_cycles;
    for (std::size_t q = 0; q < n; ++q) {
      State p = State(q);
      for (std::size_t i = 0; i < n; ++i) p = m[p];
      // p now lies on the cycle reached from q; record its smallest member.
      State low = p;
      for (State r = m[p]; r != p; r = m[r]) low = std::min(low, r);
      on_cycles.insert(low);
    }
    if (on_cycles.size() == 1) return true;
  }
  return false;
}

inline std::vector<std::vector<State>> all_orders(std::size_t n) {
  std::vector<State> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = State(i);
  std::vector<std::vector<State>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

inline std::vector<std::size_t> positions(const std::vector<State>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

inline bool dfa_monotonic(const Automaton& dfa) {
  const auto maps = maps_of(dfa);
  for (const auto& order : all_orders(dfa.n())) {
    const auto pos = positions(order);
    bool ok = true;
    for (const auto& m : maps) {
      for (std::size_t i = 0; ok && i + 1 < order.size(); ++i) {
        ok = pos[m[order[i]]] <= pos[m[order[i + 1]]];
      }
    }
    if (ok) return true;
  }
  return false;
}

// The images q_1 a, ..., q_n a read around the cycle descend at most once.
inline bool dfa_orientable(const Automaton& dfa) {
  const std::size_t n = dfa.n();
  const auto maps = maps_of(dfa);
  for (const auto& order : all_orders(n)) {
    const auto pos = positions(order);
    bool ok = true;
    for (const auto& m : maps) {
      std::size_t descents = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (pos[m[order[i]]] > pos[m[order[(i + 1) % n]]]) ++descents;
      }
      ok = ok && descents <= 1;
    }
    if (ok) return true;
  }
  return false;
}

inline Map compose(const Map& x, const Map& y) {
  Map out(x.size());
  for (std::size_t q = 0; q < x.size(); ++q) out[q] = y[x[q]];
  return out;
}

// Every element m of the transition monoid has m^k = m^(k+1) for some k.
inline bool dfa_aperiodic(const Automaton& dfa) {
  const auto gens = maps_of(dfa);
  Map id(dfa.n());
  for (std::size_t q = 0; q < id.size(); ++q) id[q] = State(q);
  std::set<Map> seen{id};
  std::vector<Map> frontier{id};
  while (!frontier.empty()) {
    std::vector<Map> next;
    for (const auto& m : frontier) {
      for (const auto& g : gens) {
        Map c = compose(m, g);
        if (seen.insert(c).second) next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& m : seen) {
    Map p = m;
    for (std::size_t i = 0; i < dfa.n(); ++i) p = compose(p, m);
    if (compose(p, m) != p) return false;
  }
  return true;
}

// Every positive class verdict of `a` implies the matching property of its
// split DFA, and d3 stays within every reported bound. Returns a description
// of each violation.
inline std::vector<std::string> class_property_violations(const Automaton& a) {
  std::vector<std::string> out;
  const ClassReport r = classify(a);
  const Automaton dfa = full_split(a).automaton;
  const std::string name = serialize(a);
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) out.push_back(what + " for\n" + name);
  };
  if (r.cyclic.member()) {
    expect(check_cyclic_certificate(a, *r.cyclic.certificate), "cyclic certificate");
    expect(dfa_cyclic(dfa), "cyclic not preserved");
  }
  if (r.one_cluster.member()) expect(dfa_one_cluster(dfa), "one-cluster not preserved");
  expect(r.one_cluster.member() == is_one_cluster_pairwise(a), "one-cluster formulations differ");
  if (r.monotonic.member()) {
    expect(check_monotonic_order(a, *r.monotonic.certificate), "monotonic certificate");
    expect(dfa_monotonic(dfa), "monotonic not preserved");
  }
  if (r.orientable.member()) {
    expect(check_orientable_order(a, *r.orientable.certificate), "orientable certificate");
    expect(dfa_orientable(dfa), "orientable not preserved");
  }
  if (r.strongly_eulerian.member()) {
    std::size_t expected = 0;
    for (const auto& s : a.symbols()) {
      std::size_t power = 1;
      for (std::size_t q = 0; q < a.n(); ++q) power *= s.image(0).size();
      expected += power;
    }
    std::vector<std::size_t> in(a.n(), 0), outdeg(a.n(), 0);
    for (const auto& b : split_multiset(a)) {
      for (std::size_t q = 0; q < a.n(); ++q) {
        ++outdeg[q];
        ++in[b.image(State(q)).min()];
      }
    }
    bool regular = true;
    for (std::size_t q = 0; q < a.n(); ++q) regular = regular && in[q] == expected && outdeg[q] == expected;
    expect(regular, "Eulerian degree formula");
  }
  if (r.aperiodic_condition.verdict == Verdict::kMember) {
    expect(dfa_aperiodic(dfa), "aperiodicity not preserved");
  }
  const DirectingReport d = d3_implicit(a);
  if (d.directing) {
    for (const auto& b : r.bounds) {
      expect(*d.length <= b.value, "d3 exceeds the " + b.bound_class + " bound");
    }
  }
  return out;
}

}  // namespace splitsync::support

#endif  // SPLITSYNC_TESTS_SUPPORT_HPP
