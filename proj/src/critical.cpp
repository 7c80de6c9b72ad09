#include "splitsync/critical.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "splitsync/directing.hpp"
#include "splitsync/split.hpp"

#ifndef SPLITSYNC_DEFAULT_CATALOG_DIR
#define SPLITSYNC_DEFAULT_CATALOG_DIR "data/catalog"
#endif

namespace splitsync {

// ---------------------------------------------------------------------------
// Symbol graph and inverse split.

bool SymbolGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return std::any_of(edges.begin(), edges.end(), [&](const SymbolEdge& e) {
    return e.first == a && e.second == b;
  });
}

SymbolGraph symbol_graph(const Automaton& dfa) {
  if (!dfa.is_dfa()) {
    throw InvalidArgument("symbol graph needs a deterministic automaton");
  }
  SymbolGraph g;
  g.node_count = dfa.size();
  for (std::size_t i = 0; i < dfa.size(); ++i) {
    for (std::size_t j = i + 1; j < dfa.size(); ++j) {
      std::size_t diffs = 0;
      State where = 0;
      for (std::size_t q = 0; q < dfa.n() && diffs < 2; ++q) {
        if (dfa.symbol(i).image(State(q)) != dfa.symbol(j).image(State(q))) {
          ++diffs;
          where = State(q);
        }
      }
      if (diffs == 1) g.edges.push_back({i, j, where});
    }
  }
  return g;
}

bool has_short_cycle(const SymbolGraph& g) {
  std::vector<std::vector<bool>> adj(g.node_count,
                                     std::vector<bool>(g.node_count, false));
  for (const auto& e : g.edges) adj[e.first][e.second] = adj[e.second][e.first] = true;
  const std::size_t m = g.node_count;
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t w = u + 1; w < m; ++w) {
      std::size_t common = 0;
      for (std::size_t x = 0; x < m; ++x) {
        if (adj[u][x] && adj[w][x]) ++common;
      }
      // Two common neighbours close a 4-cycle; one common neighbour of an
      // adjacent pair closes a triangle.
      if (common >= 2 || (common >= 1 && adj[u][w])) return true;
    }
  }
  return false;
}

Automaton merge_cnfa(const Automaton& dfa, const EdgeSubset& edges) {
  const auto g = symbol_graph(dfa);
  std::vector<std::pair<std::size_t, std::size_t>> sorted;
  std::vector<bool> merged(dfa.size(), false);
  for (auto [a, b] : edges) {
    if (a > b) std::swap(a, b);
    if (!g.has_edge(a, b)) {
      throw InvalidArgument("pair (" + std::to_string(a) + ", " +
                            std::to_string(b) +
                            ") is not an edge of the symbol graph");
    }
    sorted.emplace_back(a, b);
    merged[a] = merged[b] = true;
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < dfa.size(); ++i) {
    if (!merged[i]) out.push_back(dfa.symbol(i));
    for (auto [a, b] : sorted) {
      if (a == i) out.push_back(symbol_union(dfa.symbol(a), dfa.symbol(b)));
    }
  }
  return Automaton(dfa.n(), std::move(out));
}

InverseSplit inverse_split_enumerate(const Automaton& dfa) {
  const auto g = symbol_graph(dfa);
  if (g.edges.size() >= 32) {
    throw InvalidArgument("symbol graph has too many edges to enumerate");
  }
  InverseSplit out;
  out.edge_count = g.edges.size();
  out.complete = !has_short_cycle(g);
  const std::uint64_t count = std::uint64_t(1) << g.edges.size();
  out.automata.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    EdgeSubset subset;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (mask >> e & 1) subset.emplace_back(g.edges[e].first, g.edges[e].second);
    }
    out.automata.push_back(merge_cnfa(dfa, subset));
  }
  return out;
}

std::vector<Automaton> inverse_split_bruteforce(const Automaton& dfa) {
  if (dfa.n() != 2) {
    throw InvalidArgument("brute-force inverse split is limited to 2 states");
  }
  if (!dfa.is_dfa()) {
    throw InvalidArgument("inverse split needs a deterministic automaton");
  }
  const StateSet images[3] = {StateSet::from_one_based({1}),
                              StateSet::from_one_based({2}),
                              StateSet::from_one_based({1, 2})};
  std::vector<Symbol> all;
  for (auto x : images) {
    for (auto y : images) all.emplace_back(std::vector<StateSet>{x, y});
  }
  std::vector<Automaton> out;
  for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<Symbol> syms;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (mask >> i & 1) syms.push_back(all[i]);
    }
    Automaton candidate(2, std::move(syms));
    if (!classify_basic(candidate).is_pre_basic) continue;
    if (full_split(candidate).automaton == dfa) out.push_back(std::move(candidate));
  }
  return out;
}

std::size_t critical_length(std::size_t n) { return (n - 1) * (n - 1); }

CriticalFamily basic_critical_from_dfa(const Automaton& dfa) {
  if (!dfa.is_dfa()) {
    throw InvalidArgument("expected a deterministic automaton");
  }
  if (!classify_basic(dfa).is_basic) {
    throw InvalidArgument("DFA is not basic");
  }
  const auto sync = dfa_shortest_sync(dfa);
  if (!sync.directing || *sync.length != critical_length(dfa.n())) {
    throw InvalidArgument("DFA is not critical");
  }
  const Automaton plus = add_identity(dfa);
  auto inv = inverse_split_enumerate(plus);
  CriticalFamily family;
  family.edge_count = inv.edge_count;
  family.complete = inv.complete;
  std::vector<Automaton> pre_basic = std::move(inv.automata);
  if (!inv.complete && plus.n() == 2) {
    auto brute = inverse_split_bruteforce(plus);
    for (auto& a : brute) {
      if (std::find(pre_basic.begin(), pre_basic.end(), a) == pre_basic.end()) {
        pre_basic.push_back(std::move(a));
      }
    }
    family.complete = true;
    family.used_bruteforce = true;
  }
  family.cnfas.reserve(pre_basic.size());
  for (const auto& a : pre_basic) family.cnfas.push_back(drop_identity(a));
  return family;
}

// ---------------------------------------------------------------------------
// Canonical helpers.

Automaton from_canonical(const CanonicalForm& c) {
  if (c.code.size() < 2) throw InvalidArgument("malformed canonical code");
  const std::size_t n = c.code[0];
  const std::size_t k = c.code[1];
  if (c.code.size() != 2 + n * k) throw InvalidArgument("malformed canonical code");
  std::vector<Symbol> syms;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<StateSet> images;
    for (std::size_t q = 0; q < n; ++q) images.emplace_back(c.code[2 + i * n + q]);
    syms.emplace_back(std::move(images));
  }
  return Automaton(n, std::move(syms));
}

std::size_t labeled_copies(const Automaton& a) {
  std::size_t fact = 1;
  for (std::size_t i = 2; i <= a.n(); ++i) fact *= i;
  return fact / automorphism_count(a);
}

namespace {

CanonicalForm canonical_from_hex(const std::string& hex) {
  CanonicalForm c;
  if (hex.size() % 4 != 0) throw Error("malformed canonical code in checkpoint");
  for (std::size_t i = 0; i < hex.size(); i += 4) {
    c.code.push_back(std::uint16_t(std::stoul(hex.substr(i, 4), nullptr, 16)));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Critical DFA search.
//
// Every critical DFA D contains a minimal synchronizing subset M, and
// d(M) >= d(D). Phase one builds such cores: starting from the empty set it
// only adds a symbol when that strictly enlarges the set of state pairs that
// can be merged, and stops as soon as the set synchronizes. Any minimal
// synchronizing M is reachable this way (some letter of M always merges a
// new pair), and the chain has at most n(n-1)/2 steps. Phase two extends
// each core, up to isomorphism, through synchronizing sets whose shortest
// word stays >= target, recording those that hit it exactly. Adding a
// symbol never lengthens the shortest word, so a candidate that drops below
// the target is discarded for the whole subtree. Top-level branches are the
// conjugacy classes of the first core symbol.

struct SearchSpace {
  std::size_t n = 0;
  std::size_t target = 0;
  std::vector<Symbol> symbols;          // all non-identity maps, index order
  std::vector<std::size_t> class_reps;  // representative symbol per class
  std::vector<std::size_t> class_of;    // class index per symbol
  std::unordered_map<Symbol, std::size_t> index;
  std::size_t pair_count = 0;
  // pair_image[s * pair_count + p]: image pair of p under s, or kMerged.
  std::vector<std::uint8_t> pair_image;
};

constexpr std::uint8_t kMerged = 0xff;

SearchSpace make_space(std::size_t n, std::size_t target) {
  SearchSpace sp;
  sp.n = n;
  sp.target = target;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;
  std::vector<State> targets(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t q = n; q-- > 0;) {
      targets[q] = State(rest % n);
      rest /= n;
    }
    Symbol s = Symbol::from_map(targets);
    if (!s.is_identity()) sp.symbols.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < sp.symbols.size(); ++i) sp.index[sp.symbols[i]] = i;
  std::vector<State> perm(n);
  std::vector<std::size_t> rep_of(sp.symbols.size());
  std::unordered_map<std::size_t, std::size_t> class_index;
  for (std::size_t i = 0; i < sp.symbols.size(); ++i) {
    std::iota(perm.begin(), perm.end(), State(0));
    std::size_t best = i;
    do {
      best = std::min(best, sp.index.at(relabel(sp.symbols[i], perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep_of[i] = best;
    if (best == i) {
      class_index[i] = sp.class_reps.size();
      sp.class_reps.push_back(i);
    }
  }
  sp.class_of.resize(sp.symbols.size());
  for (std::size_t i = 0; i < sp.symbols.size(); ++i) {
    sp.class_of[i] = class_index.at(rep_of[i]);
  }

  std::vector<std::vector<std::uint8_t>> pair_id(n, std::vector<std::uint8_t>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      pair_id[p][q] = pair_id[q][p] = std::uint8_t(sp.pair_count++);
    }
  }
  sp.pair_image.resize(sp.symbols.size() * sp.pair_count);
  for (std::size_t s = 0; s < sp.symbols.size(); ++s) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const State a = sp.symbols[s].target(State(p));
        const State b = sp.symbols[s].target(State(q));
        sp.pair_image[s * sp.pair_count + pair_id[p][q]] =
            a == b ? kMerged : pair_id[a][b];
      }
    }
  }
  return sp;
}

constexpr std::size_t kNoSync = std::numeric_limits<std::size_t>::max();

struct Candidate {
  std::uint16_t symbol;
  std::size_t length;  // shortest sync length of S ∪ {symbol}
};

class BranchSearch {
 public:
  BranchSearch(const SearchSpace& sp, std::atomic<std::size_t>& nodes)
      : sp_(sp), tables_(sp.n, {}), nodes_(nodes) {}

  // Phase one for branch k: cores whose first symbol is class rep k.
  std::set<CanonicalForm> cores(std::size_t branch) {
    cores_.clear();
    visited_.clear();
    const std::size_t root = sp_.class_reps[branch];
    if (mergeable({root}) == 0) return {};  // permutations merge nothing
    chosen_.assign(1, root);
    tables_ = SubsetTables(sp_.n, {sp_.symbols[root]});
    const std::size_t len = length();
    if (len == kNoSync) {
      grow(mergeable(chosen_));
    } else if (len >= sp_.target) {
      add_core();
    }
    return std::move(cores_);
  }

  // Phase two: critical supersets of one core.
  std::map<CanonicalForm, Automaton> extend(const CanonicalForm& core) {
    found_.clear();
    const Automaton a = from_canonical(core);
    chosen_.clear();
    std::vector<bool> in_core(sp_.symbols.size(), false);
    for (const auto& s : a.symbols()) {
      const std::size_t i = sp_.index.at(s);
      chosen_.push_back(i);
      in_core[i] = true;
    }
    std::vector<Symbol> syms;
    for (auto i : chosen_) syms.push_back(sp_.symbols[i]);
    tables_ = SubsetTables(sp_.n, syms);
    const std::size_t len = length();
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < sp_.symbols.size(); ++i) {
      if (in_core[i]) continue;
      tables_.push_back(sp_.symbols[i]);
      const std::size_t l = length();
      tables_.pop_back();
      if (l >= sp_.target) cands.push_back({std::uint16_t(i), l});
    }
    descend(len, cands);
    return std::move(found_);
  }

 private:
  std::size_t length() const {
    auto l = shortest_sync_length(tables_);
    return l ? *l : kNoSync;
  }

  // Bitmask of pairs that some word over `set` merges.
  std::uint64_t mergeable(const std::vector<std::size_t>& set) const {
    std::uint64_t m = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t p = 0; p < sp_.pair_count; ++p) {
        if (m >> p & 1) continue;
        for (auto s : set) {
          const std::uint8_t img = sp_.pair_image[s * sp_.pair_count + p];
          if (img == kMerged || (m >> img & 1)) {
            m |= std::uint64_t(1) << p;
            changed = true;
            break;
          }
        }
      }
    }
    return m;
  }

  void grow(std::uint64_t merged) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    for (std::size_t y = 0; y < sp_.symbols.size(); ++y) {
      if (std::find(chosen_.begin(), chosen_.end(), y) != chosen_.end()) continue;
      chosen_.push_back(y);
      const std::uint64_t m = mergeable(chosen_);
      if (m != merged) {
        std::vector<std::size_t> key(chosen_);
        std::sort(key.begin(), key.end());
        if (visited_.insert(std::move(key)).second) {
          tables_.push_back(sp_.symbols[y]);
          const std::size_t len = length();
          if (len == kNoSync) {
            grow(m);
          } else if (len >= sp_.target) {
            add_core();
          }
          tables_.pop_back();
        }
      }
      chosen_.pop_back();
    }
  }

  void add_core() {
    std::vector<Symbol> syms;
    for (auto i : chosen_) syms.push_back(sp_.symbols[i]);
    cores_.insert(canonical_form(Automaton(sp_.n, std::move(syms))));
  }

  void descend(std::size_t current, const std::vector<Candidate>& cands) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    if (current == sp_.target) record();
    std::vector<Candidate> next;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const std::size_t c = cands[k].symbol;
      chosen_.push_back(c);
      tables_.push_back(sp_.symbols[c]);
      next.clear();
      for (std::size_t j = k + 1; j < cands.size(); ++j) {
        tables_.push_back(sp_.symbols[cands[j].symbol]);
        const std::size_t len = length();
        tables_.pop_back();
        if (len >= sp_.target) next.push_back({cands[j].symbol, len});
      }
      descend(cands[k].length, next);
      tables_.pop_back();
      chosen_.pop_back();
    }
  }

  void record() {
    std::vector<Symbol> syms;
    for (auto i : chosen_) syms.push_back(sp_.symbols[i]);
    auto canon = canonical_form(Automaton(sp_.n, std::move(syms)));
    if (!found_.count(canon)) {
      Automaton rep = from_canonical(canon);
      found_.emplace(std::move(canon), std::move(rep));
    }
  }

  const SearchSpace& sp_;
  SubsetTables tables_;
  std::vector<std::size_t> chosen_;
  std::set<std::vector<std::size_t>> visited_;
  std::set<CanonicalForm> cores_;
  std::map<CanonicalForm, Automaton> found_;
  std::atomic<std::size_t>& nodes_;
};

struct Checkpoint {
  std::set<std::size_t> done;
  std::set<CanonicalForm> cores;  // cores already extended
  std::set<CanonicalForm> found;
};

Checkpoint load_checkpoint(const std::string& path, std::size_t n,
                           std::size_t target) {
  Checkpoint cp;
  std::ifstream in(path);
  if (!in) return cp;
  std::string line;
  bool header_ok = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "search") {
      std::size_t cn = 0, ct = 0;
      ls >> cn >> ct;
      if (cn != n || ct != target) {
        throw Error("checkpoint '" + path + "' belongs to a different search");
      }
      header_ok = true;
    } else if (tag == "found") {
      std::string hex;
      ls >> hex;
      cp.found.insert(canonical_from_hex(hex));
    } else if (tag == "core") {
      std::string hex;
      ls >> hex;
      cp.cores.insert(canonical_from_hex(hex));
    } else if (tag == "done") {
      std::size_t b = 0;
      ls >> b;
      cp.done.insert(b);
    }
  }
  if (!header_ok && (!cp.done.empty() || !cp.cores.empty())) {
    throw Error("checkpoint '" + path + "' has no header");
  }
  return cp;
}

}  // namespace

CriticalSearchResult critical_dfa_search(std::size_t n,
                                         const CriticalSearchOptions& options) {
  if (n < 2 || n > kMaxSearchStates) {
    throw InvalidArgument("critical DFA search supports 2.." +
                          std::to_string(kMaxSearchStates) + " states");
  }
  const std::size_t target = options.target.value_or(critical_length(n));
  const SearchSpace sp = make_space(n, target);

  Checkpoint cp;
  std::ofstream checkpoint_out;
  if (!options.checkpoint_path.empty()) {
    cp = load_checkpoint(options.checkpoint_path, n, target);
    const bool fresh = cp.done.empty() && cp.found.empty() && cp.cores.empty();
    checkpoint_out.open(options.checkpoint_path, std::ios::app);
    if (!checkpoint_out) {
      throw Error("cannot write checkpoint '" + options.checkpoint_path + "'");
    }
    if (fresh) checkpoint_out << "search " << n << ' ' << target << '\n' << std::flush;
  }

  std::map<CanonicalForm, Automaton> results;
  for (const auto& c : cp.found) results.emplace(c, from_canonical(c));

  std::vector<std::size_t> pending;
  for (std::size_t b = 0; b < sp.class_reps.size(); ++b) {
    if (!cp.done.count(b)) pending.push_back(b);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> nodes{0};
  std::mutex mu;
  SearchProgress progress;
  progress.branches_total = sp.class_reps.size();
  progress.branches_done = cp.done.size();

  std::set<CanonicalForm> claimed = cp.cores;

  auto worker = [&] {
    BranchSearch search(sp, nodes);
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      const std::size_t branch = pending[k];
      for (const auto& core : search.cores(branch)) {
        {
          std::lock_guard<std::mutex> lock(mu);
          if (!claimed.insert(core).second) continue;
        }
        auto found = search.extend(core);
        std::lock_guard<std::mutex> lock(mu);
        for (auto& [canon, a] : found) {
          if (results.emplace(canon, a).second && checkpoint_out.is_open()) {
            checkpoint_out << "found " << canon.to_hex() << '\n';
          }
        }
        if (checkpoint_out.is_open()) {
          checkpoint_out << "core " << core.to_hex() << '\n' << std::flush;
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      if (checkpoint_out.is_open()) {
        checkpoint_out << "done " << branch << '\n' << std::flush;
      }
      ++progress.branches_done;
      progress.nodes = nodes.load();
      progress.found = results.size();
      if (options.progress) options.progress(progress);
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  CriticalSearchResult out;
  out.n = n;
  out.target = target;
  out.nodes = nodes.load();
  for (auto& [canon, a] : results) {
    out.labeled_count += labeled_copies(a);
    out.dfas.push_back(std::move(a));
  }
  return out;
}

CriticalSearchResult fixed_alphabet_search(std::size_t n, std::size_t k,
                                           std::size_t target, std::size_t jobs) {
  if (n < 2 || n > kMaxFixedSearchStates) {
    throw InvalidArgument("fixed-alphabet search supports 2.." +
                          std::to_string(kMaxFixedSearchStates) + " states");
  }
  if (k != 2 && k != 3) throw InvalidArgument("fixed-alphabet search needs k = 2 or 3");
  const SearchSpace sp = make_space(n, target);

  // The letter of smallest class is relabeled to its class representative;
  // the remaining letters come from classes at least as large.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> nodes{0};
  std::mutex mu;
  std::map<CanonicalForm, Automaton> results;
  auto worker = [&] {
    SubsetTables tables(n, {});
    auto length = [&] {
      auto l = shortest_sync_length(tables);
      return l ? *l : kNoSync;
    };
    for (;;) {
      const std::size_t branch = next.fetch_add(1);
      if (branch >= sp.class_reps.size()) return;
      const std::size_t root = sp.class_reps[branch];
      tables = SubsetTables(n, {sp.symbols[root]});
      std::vector<std::size_t> cands;
      std::map<CanonicalForm, Automaton> local;
      auto record = [&](std::vector<Symbol> syms) {
        auto canon = canonical_form(Automaton(n, std::move(syms)));
        if (!local.count(canon)) local.emplace(canon, from_canonical(canon));
      };
      for (std::size_t y = 0; y < sp.symbols.size(); ++y) {
        if (y == root || sp.class_of[y] < branch) continue;
        tables.push_back(sp.symbols[y]);
        const std::size_t len = length();
        tables.pop_back();
        nodes.fetch_add(1, std::memory_order_relaxed);
        if (len < target) continue;
        if (k == 2) {
          if (len == target) record({sp.symbols[root], sp.symbols[y]});
        } else {
          cands.push_back(y);
        }
      }
      for (std::size_t i = 0; i < cands.size(); ++i) {
        tables.push_back(sp.symbols[cands[i]]);
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
          tables.push_back(sp.symbols[cands[j]]);
          if (length() == target) {
            record({sp.symbols[root], sp.symbols[cands[i]], sp.symbols[cands[j]]});
          }
          tables.pop_back();
        }
        tables.pop_back();
        nodes.fetch_add(cands.size() - i - 1, std::memory_order_relaxed);
      }
      std::lock_guard<std::mutex> lock(mu);
      results.merge(local);
    }
  };
  jobs = std::max<std::size_t>(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  CriticalSearchResult out;
  out.n = n;
  out.target = target;
  out.nodes = nodes.load();
  for (auto& [canon, a] : results) {
    out.labeled_count += labeled_copies(a);
    out.dfas.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog.

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kGenerator: return "generator";
    case Provenance::kSearch: return "search";
    case Provenance::kDataFile: return "data-file";
  }
  return "unknown";
}

Automaton cerny(std::size_t n) {
  if (n < 1 || n > kMaxStates) throw InvalidArgument("cerny: n out of range");
  std::vector<State> a(n), b(n);
  for (std::size_t q = 0; q < n; ++q) {
    a[q] = State((q + 1) % n);
    b[q] = State(q);
  }
  if (n > 1) b[0] = 1;
  std::vector<Symbol> syms{Symbol::from_map(a)};
  Symbol sb = Symbol::from_map(b);
  if (!(sb == syms[0])) syms.push_back(sb);
  return Automaton(n, std::move(syms));
}

Automaton cerny_cnfa(std::size_t n) {
  if (n < 2) throw InvalidArgument("cerny_cnfa needs at least 2 states");
  const Automaton base = cerny(n);
  std::vector<StateSet> b(base.symbol(1).images().begin(),
                          base.symbol(1).images().end());
  b[0] = StateSet::from_one_based({1, 2});
  return Automaton(n, {base.symbol(0), Symbol(std::move(b))});
}

std::string default_catalog_dir() {
  if (const char* env = std::getenv("SPLITSYNC_CATALOG_DIR")) return env;
  return SPLITSYNC_DEFAULT_CATALOG_DIR;
}

std::vector<std::string> catalog_names() {
  return {"cerny", "cerny_cnfa", "a3", "a4", "c4", "t42", "roman", "kari"};
}

namespace {

std::optional<std::size_t> manifest_length(const std::string& dir,
                                           const std::string& name) {
  std::ifstream in(dir + "/MANIFEST");
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string entry;
    std::size_t len = 0;
    if (!(ls >> entry) || entry[0] == '#') continue;
    if (entry == name && (ls >> len)) return len;
  }
  return std::nullopt;
}

}  // namespace

CatalogEntry catalog(const std::string& name, std::optional<std::size_t> n,
                     const CatalogOptions& options) {
  CatalogEntry e;
  e.name = name;
  if (name == "cerny" || name == "cerny_cnfa") {
    if (!n) throw InvalidArgument(name + " needs a state count");
    if (*n < 2 || *n > kMaxStates) {
      throw InvalidArgument(name + ": state count must be in 2..16");
    }
    e.file.automaton = name == "cerny" ? cerny(*n) : cerny_cnfa(*n);
    e.file.kind = name == "cerny" ? FileKind::kDfa : FileKind::kCnfa;
    e.file.names = {"a", "b"};
    e.expected_length = critical_length(*n);
    e.provenance = Provenance::kGenerator;
    return e;
  }
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw InvalidArgument("unknown catalog entry '" + name + "'");
  }
  const auto expected = manifest_length(options.dir, name);
  if (!expected) {
    throw CatalogError("missing catalog data: no manifest line for '" + name +
                       "' in " + options.dir);
  }
  const std::string path = options.dir + "/" + name + ".dfa";
  if (!std::ifstream(path)) {
    throw CatalogError("missing catalog data file " + path);
  }
  try {
    e.file = load_automaton_file(path);
  } catch (const Error& err) {
    throw CatalogError(std::string("catalog data file unreadable: ") + err.what());
  }
  e.expected_length = *expected;
  e.provenance = (name == "roman" || name == "kari") ? Provenance::kDataFile
                                                      : Provenance::kSearch;
  const auto report = e.file.automaton.is_dfa() ? dfa_shortest_sync(e.file.automaton)
                                                : d3_implicit(e.file.automaton);
  if (!report.directing || *report.length != e.expected_length) {
    throw CatalogError("catalog entry '" + name + "' fails verification: expected " +
                       std::to_string(e.expected_length) + ", got " +
                       (report.directing ? std::to_string(*report.length)
                                         : std::string("not directing")));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Census.

CensusReport census(std::size_t n, const CensusOptions& options) {
  if (n < 2 || n > 6) {
    throw InvalidArgument("census supports 2..6 states");
  }
  CensusReport report;
  report.n = n;
  if (n <= kMaxSearchStates) {
    CriticalSearchOptions so = options.search;
    so.jobs = std::max(so.jobs, options.jobs);
    const auto found = critical_dfa_search(n, so);
    for (std::size_t i = 0; i < found.dfas.size(); ++i) {
      CensusSource s;
      s.label = "dfa" + std::to_string(i + 1);
      s.dfa = found.dfas[i];
      report.sources.push_back(std::move(s));
    }
  } else {
    CensusSource c;
    c.label = "cerny";
    c.dfa = cerny(n);
    report.sources.push_back(std::move(c));
    const std::string extra = n == 5 ? "roman" : "kari";
    CensusSource s;
    s.label = extra;
    s.dfa = catalog(extra, std::nullopt, options.catalog).file.automaton;
    report.sources.push_back(std::move(s));
  }

  // Families are independent; compute them in parallel, merge in order.
  std::vector<CriticalFamily> families(report.sources.size());
  {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= families.size()) return;
        families[k] = basic_critical_from_dfa(report.sources[k].dfa);
      }
    };
    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
  }

  std::unordered_map<CanonicalForm, std::size_t> seen;  // -> source
  const std::size_t target = critical_length(n);
  for (std::size_t k = 0; k < families.size(); ++k) {
    auto& src = report.sources[k];
    auto& fam = families[k];
    src.edge_count = fam.edge_count;
    src.cnfa_count = fam.cnfas.size();
    src.complete = fam.complete;
    src.used_bruteforce = fam.used_bruteforce;
    report.complete = report.complete && fam.complete;
    report.dfa_count_labeled += labeled_copies(src.dfa);
    for (auto& cnfa : fam.cnfas) {
      auto canon = canonical_form(cnfa);
      auto [it, fresh] = seen.try_emplace(canon, k);
      if (!fresh) {
        ++report.isomorphic_collisions;
        // Split commutes with relabeling, so two different critical DFA
        // classes can never produce isomorphic CNFAs.
        if (it->second != k) report.all_verified = false;
        continue;
      }
      CensusMember m;
      m.cnfa = std::move(cnfa);
      m.source = k;
      report.members.push_back(std::move(m));
    }
  }
  report.dfa_count_iso = report.sources.size();

  for (auto& m : report.members) {
    const auto r = d3_implicit(m.cnfa);
    m.d3 = r.directing ? *r.length : 0;
    m.verified = r.directing && *r.length == target &&
                 verify_d3(m.cnfa, *r.witness).accepted;
    if (n <= kMaxOracleStates) {
      const auto o = d3_oracle(m.cnfa);
      m.d3_oracle = o.directing ? *o.length : 0;
      m.verified = m.verified && o.directing && *o.length == target;
    }
    report.all_verified = report.all_verified && m.verified;
    report.cnfa_count_labeled += labeled_copies(m.cnfa);
  }
  report.cnfa_count_iso = report.members.size();
  return report;
}

}  // namespace splitsync
