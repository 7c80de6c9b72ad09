#include "splitsync/split.hpp"

#include <cstdlib>
#include <string>
#include <unordered_map>

namespace splitsync {

unsigned long long default_split_budget() {
  if (const char* env = std::getenv("SPLITSYNC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSplitBudget;
}

Automaton split_at(const Automaton& a, State q_split,
                   std::size_t symbol_index) {
  if (symbol_index >= a.size()) {
    throw InvalidArgument("symbol index " + std::to_string(symbol_index) +
                          " is not a symbol of the automaton");
  }
  if (q_split >= a.n()) {
    throw InvalidArgument("split state " + std::to_string(q_split + 1) +
                          " out of range");
  }
  const Symbol& target = a.symbol(symbol_index);
  std::vector<Symbol> out;
  out.reserve(a.size() + target.image(q_split).size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != symbol_index) out.push_back(a.symbol(i));
  }
  for (State choice : target.image(q_split)) {
    std::vector<StateSet> images(target.images().begin(),
                                 target.images().end());
    images[q_split] = StateSet::single(choice);
    out.emplace_back(std::move(images));
  }
  return Automaton::from_symbols_dedup(a.n(), std::move(out));
}

DetSubsymbols::iterator::iterator(const Symbol& source)
    : source_(&source), cursor_(source.n(), 0), done_(false) {
  options_.reserve(source.n());
  for (auto img : source.images()) options_.push_back(img.members());
  rebuild();
}

void DetSubsymbols::iterator::rebuild() {
  std::vector<State> targets(options_.size());
  for (std::size_t q = 0; q < options_.size(); ++q) {
    targets[q] = options_[q][cursor_[q]];
  }
  current_ = Symbol::from_map(targets);
}

DetSubsymbols::iterator& DetSubsymbols::iterator::operator++() {
  std::size_t q = options_.size();
  while (q > 0) {
    --q;
    if (++cursor_[q] < options_[q].size()) {
      rebuild();
      return *this;
    }
    cursor_[q] = 0;
  }
  done_ = true;
  return *this;
}

SplitResult full_split(const Automaton& a, unsigned long long budget) {
  unsigned long long bound = 0;
  for (const auto& s : a.symbols()) {
    unsigned long long c = s.choice_count();
    if (c > budget || bound > budget - c) {
      // Report the full bound when it is representable.
      unsigned long long total = 0;
      for (const auto& t : a.symbols()) {
        unsigned long long tc = t.choice_count();
        total = (total > ~0ull - tc) ? ~0ull : total + tc;
      }
      throw BudgetExceeded("split alphabet exceeds budget", total, budget);
    }
    bound += c;
  }

  std::vector<Symbol> symbols;
  std::vector<std::vector<std::size_t>> provenance;
  std::unordered_map<Symbol, std::size_t> where;
  symbols.reserve(bound);
  where.reserve(bound);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const Symbol& b : det_subsymbols(a.symbol(i))) {
      auto [it, fresh] = where.try_emplace(b, symbols.size());
      if (fresh) {
        symbols.push_back(b);
        provenance.push_back({i});
      } else {
        provenance[it->second].push_back(i);
      }
    }
  }
  return SplitResult{Automaton(a.n(), std::move(symbols)),
                     std::move(provenance)};
}

bool gamma_contains(const Automaton& a, const Symbol& b) {
  if (!b.is_deterministic()) {
    throw InvalidArgument("gamma_contains expects a deterministic symbol");
  }
  if (b.n() != a.n()) {
    throw InvalidArgument("symbol and automaton over different state counts");
  }
  for (const auto& s : a.symbols()) {
    if (symbol_leq(b, s)) return true;
  }
  return false;
}

namespace {

using Box = std::array<StateSet, kMaxStates>;

unsigned __int128 box_volume(const Box& box, std::size_t n) {
  unsigned __int128 v = 1;
  for (std::size_t q = 0; q < n; ++q) v *= box[q].size();
  return v;
}

// Signed inclusion–exclusion: Σ over nonempty subsets T of symbols with a
// nonempty statewise intersection of (-1)^{|T|+1} |∩T|. Subsets whose
// intersection is empty contribute nothing and neither do their supersets.
void include_exclude(const std::vector<Symbol>& syms, std::size_t n,
                     std::size_t next, const Box& box, int depth,
                     __int128& total) {
  for (std::size_t i = next; i < syms.size(); ++i) {
    Box inter;
    bool nonempty = true;
    for (std::size_t q = 0; q < n && nonempty; ++q) {
      inter[q] = box[q] & syms[i].image(State(q));
      nonempty = !inter[q].empty();
    }
    if (!nonempty) continue;
    const __int128 vol = __int128(box_volume(inter, n));
    total += (depth % 2 == 0) ? vol : -vol;
    include_exclude(syms, n, i + 1, inter, depth + 1, total);
  }
}

}  // namespace

unsigned long long split_alphabet_size(const Automaton& a) {
  Box all;
  for (std::size_t q = 0; q < a.n(); ++q) all[q] = StateSet::full(a.n());
  __int128 total = 0;
  include_exclude(a.symbols(), a.n(), 0, all, 0, total);
  constexpr __int128 limit = __int128(1) << 63;
  if (total >= limit) {
    throw BudgetExceeded("split alphabet size overflows", ~0ull, (1ull << 63) - 1);
  }
  return static_cast<unsigned long long>(total);
}

}  // namespace splitsync
