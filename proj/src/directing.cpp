#include "splitsync/directing.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace splitsync {

std::string to_string(Engine e) {
  switch (e) {
    case Engine::kDfa: return "dfa";
    case Engine::kSplit: return "split";
    case Engine::kImplicit: return "implicit";
    case Engine::kOracle: return "oracle";
  }
  return "unknown";
}

SubsetTables::SubsetTables(const Automaton& dfa)
    : SubsetTables(dfa.n(), dfa.symbols()) {}

SubsetTables::SubsetTables(std::size_t n, const std::vector<Symbol>& symbols)
    : n_(n) {
  tables_.reserve(symbols.size() + 8);
  for (const auto& s : symbols) push_back(s);
}

void SubsetTables::push_back(const Symbol& a) {
  if (!a.is_deterministic()) {
    throw InvalidArgument("subset tables need deterministic symbols");
  }
  Table t{};
  for (unsigned s = 1; s < 256; ++s) {
    const unsigned low = s & (s - 1);
    const unsigned bit = std::countr_zero(s);
    t.lo[s] = t.lo[low];
    t.hi[s] = t.hi[low];
    if (bit < n_) t.lo[s] |= a.image(State(bit)).bits();
    if (bit + 8 < n_) t.hi[s] |= a.image(State(bit + 8)).bits();
  }
  tables_.push_back(t);
}

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

struct BfsScratch {
  std::vector<std::uint32_t> dist;
  std::vector<StateSet::Mask> queue;
};

BfsScratch& scratch_for(std::size_t n) {
  thread_local BfsScratch s;
  const std::size_t size = std::size_t(1) << n;
  if (s.dist.size() < size) s.dist.resize(size);
  if (s.queue.size() < size) s.queue.resize(size);
  return s;
}

DirectingReport not_directing(Engine e) {
  DirectingReport r;
  r.engine = e;
  return r;
}

void require_dfa(const Automaton& a) {
  if (!a.is_dfa()) {
    throw InvalidArgument("automaton is not deterministic");
  }
}

}  // namespace

std::optional<std::size_t> shortest_sync_length(const SubsetTables& tables) {
  const std::size_t n = tables.n();
  const auto full = StateSet::full(n).bits();
  if (std::has_single_bit(full)) return 0;
  auto& sc = scratch_for(n);
  std::fill_n(sc.dist.begin(), std::size_t(1) << n, kUnseen);
  std::size_t head = 0, tail = 0;
  sc.queue[tail++] = full;
  sc.dist[full] = 0;
  while (head < tail) {
    const auto s = sc.queue[head++];
    const auto d = sc.dist[s];
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto t = tables.step(i, s);
      if (sc.dist[t] != kUnseen) continue;
      if (std::has_single_bit(t)) return d + 1;
      sc.dist[t] = d + 1;
      sc.queue[tail++] = t;
    }
  }
  return std::nullopt;
}

DirectingReport dfa_shortest_sync(const Automaton& dfa) {
  require_dfa(dfa);
  const std::size_t n = dfa.n();
  const SubsetTables tables(dfa);
  const auto full = StateSet::full(n).bits();
  DirectingReport r;
  r.engine = Engine::kDfa;
  if (std::has_single_bit(full)) {
    r.directing = true;
    r.length = 0;
    r.witness = Word{};
    r.sync_state = 0;
    return r;
  }
  const std::size_t size = std::size_t(1) << n;
  std::vector<std::uint32_t> dist(size, kUnseen);
  std::vector<StateSet::Mask> parent(size, 0);
  std::vector<std::uint32_t> letter(size, 0);
  std::vector<StateSet::Mask> queue;
  queue.reserve(size);
  queue.push_back(full);
  dist[full] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto s = queue[head];
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto t = tables.step(i, s);
      if (dist[t] != kUnseen) continue;
      dist[t] = dist[s] + 1;
      parent[t] = s;
      letter[t] = std::uint32_t(i);
      if (std::has_single_bit(t)) {
        Word w;
        for (auto cur = t; cur != full; cur = parent[cur]) w.push_back(letter[cur]);
        std::reverse(w.begin(), w.end());
        r.directing = true;
        r.length = w.size();
        r.witness = std::move(w);
        r.sync_state = StateSet(t).min();
        return r;
      }
      queue.push_back(t);
    }
  }
  return not_directing(Engine::kDfa);
}

DirectingReport d3_via_split(const Automaton& a, unsigned long long budget) {
  const auto split = full_split(a, budget);
  auto r = dfa_shortest_sync(split.automaton);
  r.engine = Engine::kSplit;
  if (r.witness) {
    for (auto& letter : *r.witness) letter = split.provenance[letter].front();
  }
  return r;
}

namespace {

// All images {f(q) : q ∈ S} over choice functions f with f(q) ∈ q·a,
// built state by state with deduplication of partial images.
class ChoiceImages {
 public:
  explicit ChoiceImages(std::size_t n)
      : stamp_(std::size_t(1) << n, 0) {}

  const std::vector<StateSet::Mask>& compute(const Symbol& a, StateSet s,
                                             unsigned long long budget) {
    current_.assign(1, 0);
    unsigned long long work = 0;
    for (State q : s) {
      const StateSet img = a.image(q);
      if (img.is_singleton()) {
        for (auto& m : current_) m |= img.bits();
        continue;
      }
      work += current_.size() * img.size();
      if (work > budget) {
        throw BudgetExceeded("choice-function expansion exceeds budget", work,
                             budget);
      }
      next_.clear();
      ++epoch_;
      for (auto m : current_) {
        for (State p : img) {
          const auto t = StateSet::Mask(m | (1u << p));
          if (stamp_[t] != epoch_) {
            stamp_[t] = epoch_;
            next_.push_back(t);
          }
        }
      }
      current_.swap(next_);
    }
    return current_;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<StateSet::Mask> current_;
  std::vector<StateSet::Mask> next_;
};

}  // namespace

DirectingReport d3_implicit(const Automaton& a, unsigned long long budget) {
  const std::size_t n = a.n();
  const auto full = StateSet::full(n).bits();
  DirectingReport r;
  r.engine = Engine::kImplicit;
  if (std::has_single_bit(full)) {
    r.directing = true;
    r.length = 0;
    r.witness = Word{};
    r.sync_state = 0;
    return r;
  }
  const std::size_t size = std::size_t(1) << n;
  std::vector<std::uint32_t> dist(size, kUnseen);
  std::vector<StateSet::Mask> parent(size, 0);
  std::vector<std::uint32_t> letter(size, 0);
  std::vector<StateSet::Mask> queue;
  queue.reserve(size);
  queue.push_back(full);
  dist[full] = 0;
  ChoiceImages images(n);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto s = queue[head];
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (auto t : images.compute(a.symbol(i), StateSet(s), budget)) {
        if (dist[t] != kUnseen) continue;
        dist[t] = dist[s] + 1;
        parent[t] = s;
        letter[t] = std::uint32_t(i);
        if (std::has_single_bit(t)) {
          Word w;
          for (auto cur = t; cur != full; cur = parent[cur]) w.push_back(letter[cur]);
          std::reverse(w.begin(), w.end());
          r.directing = true;
          r.length = w.size();
          r.witness = std::move(w);
          r.sync_state = StateSet(t).min();
          return r;
        }
        queue.push_back(t);
      }
    }
  }
  return not_directing(Engine::kImplicit);
}

DirectingReport d3_oracle(const Automaton& a) {
  const std::size_t n = a.n();
  if (n > kMaxOracleStates) {
    throw InvalidArgument("d3_oracle supports at most " +
                          std::to_string(kMaxOracleStates) + " states");
  }
  // A configuration is (1·w, ..., n·w); encode each nonempty set as
  // mask - 1 in radix 2^n - 1.
  const std::size_t radix = (std::size_t(1) << n) - 1;
  std::size_t count = 1;
  for (std::size_t q = 0; q < n; ++q) count *= radix;

  using Config = std::array<StateSet, kMaxOracleStates>;
  auto encode = [&](const Config& c) {
    std::size_t code = 0;
    for (std::size_t q = n; q-- > 0;) code = code * radix + (c[q].bits() - 1u);
    return code;
  };
  auto meet = [&](const Config& c) {
    StateSet m = StateSet::full(n);
    for (std::size_t q = 0; q < n; ++q) m &= c[q];
    return m;
  };

  Config start{};
  for (std::size_t q = 0; q < n; ++q) start[q] = StateSet::single(State(q));

  DirectingReport r;
  r.engine = Engine::kOracle;
  if (auto m = meet(start); !m.empty()) {
    r.directing = true;
    r.length = 0;
    r.witness = Word{};
    r.sync_state = m.min();
    return r;
  }

  std::vector<std::uint32_t> dist(count, kUnseen);
  std::vector<std::uint32_t> parent(count, 0);
  std::vector<std::uint32_t> letter(count, 0);
  std::deque<Config> queue{start};
  const auto start_code = encode(start);
  dist[start_code] = 0;
  while (!queue.empty()) {
    const Config c = queue.front();
    queue.pop_front();
    const auto code = encode(c);
    for (std::size_t i = 0; i < a.size(); ++i) {
      Config next{};
      for (std::size_t q = 0; q < n; ++q) next[q] = apply(a.symbol(i), c[q]);
      const auto next_code = encode(next);
      if (dist[next_code] != kUnseen) continue;
      dist[next_code] = dist[code] + 1;
      parent[next_code] = std::uint32_t(code);
      letter[next_code] = std::uint32_t(i);
      if (auto m = meet(next); !m.empty()) {
        Word w;
        for (auto cur = next_code; cur != start_code; cur = parent[cur]) {
          w.push_back(letter[cur]);
        }
        std::reverse(w.begin(), w.end());
        r.directing = true;
        r.length = w.size();
        r.witness = std::move(w);
        r.sync_state = m.min();
        return r;
      }
      queue.push_back(next);
    }
  }
  return not_directing(Engine::kOracle);
}

VerifyResult verify_d3(const Automaton& a, const Word& w) {
  VerifyResult v;
  v.sync_states = StateSet::full(a.n());
  v.end_sets.reserve(a.n());
  for (std::size_t q = 0; q < a.n(); ++q) {
    const auto end = apply_word(a, w, StateSet::single(State(q)));
    v.end_sets.push_back(end);
    v.sync_states &= end;
  }
  v.accepted = !v.sync_states.empty();
  return v;
}

std::size_t cubic_bound(std::size_t n) { return (n * n * n - n) / 6; }

std::size_t imreh_bound(std::size_t n) {
  if (n < 2) return 1;
  return n * (n - 1) * (n - 2) / 2 + 1;
}

}  // namespace splitsync
