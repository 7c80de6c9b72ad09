#include "splitsync/core.hpp"

#include <numeric>
#include <random>
#include <unordered_set>

namespace splitsync {

namespace {

void check_n(std::size_t n) {
  if (n == 0 || n > kMaxStates) {
    throw InvalidArgument("state count " + std::to_string(n) +
                          " outside supported range 1.." +
                          std::to_string(kMaxStates));
  }
}

void check_same_n(const Symbol& a, const Symbol& b) {
  if (a.n() != b.n()) {
    throw InvalidArgument("symbols over different state counts (" +
                          std::to_string(a.n()) + " vs " +
                          std::to_string(b.n()) + ")");
  }
}

}  // namespace

StateSet StateSet::from_one_based(std::initializer_list<int> states) {
  StateSet s;
  for (int q : states) {
    if (q < 1 || q > int(kMaxStates)) {
      throw InvalidArgument("state " + std::to_string(q) + " out of range");
    }
    s.insert(State(q - 1));
  }
  return s;
}

std::string StateSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (State q : *this) {
    if (!first) out += ',';
    out += std::to_string(q + 1);
    first = false;
  }
  return out + "}";
}

Symbol::Symbol(std::vector<StateSet> images) : n_(images.size()) {
  check_n(n_);
  const StateSet all = StateSet::full(n_);
  for (std::size_t q = 0; q < n_; ++q) {
    if (images[q].empty()) {
      throw InvalidArgument("empty image at state " + std::to_string(q + 1));
    }
    if (!images[q].subset_of(all)) {
      throw InvalidArgument("image of state " + std::to_string(q + 1) +
                            " leaves the state set");
    }
    images_[q] = images[q];
  }
}

Symbol Symbol::identity(std::size_t n) {
  check_n(n);
  std::vector<StateSet> images(n);
  for (std::size_t q = 0; q < n; ++q) images[q] = StateSet::single(State(q));
  return Symbol(std::move(images));
}

Symbol Symbol::from_map(std::span<const State> targets) {
  std::vector<StateSet> images;
  images.reserve(targets.size());
  for (State t : targets) {
    if (t >= targets.size()) {
      throw InvalidArgument("target state out of range");
    }
    images.push_back(StateSet::single(t));
  }
  return Symbol(std::move(images));
}

Symbol Symbol::from_one_based(
    std::initializer_list<std::initializer_list<int>> images) {
  std::vector<StateSet> sets;
  for (const auto& img : images) {
    StateSet s;
    for (int q : img) {
      if (q < 1 || q > int(images.size())) {
        throw InvalidArgument("state " + std::to_string(q) + " out of range");
      }
      s.insert(State(q - 1));
    }
    sets.push_back(s);
  }
  return Symbol(std::move(sets));
}

bool Symbol::is_deterministic() const {
  for (std::size_t q = 0; q < n_; ++q) {
    if (!images_[q].is_singleton()) return false;
  }
  return true;
}

bool Symbol::is_identity() const {
  for (std::size_t q = 0; q < n_; ++q) {
    if (images_[q] != StateSet::single(State(q))) return false;
  }
  return true;
}

unsigned long long Symbol::choice_count() const {
  unsigned long long product = 1;
  for (std::size_t q = 0; q < n_; ++q) product *= images_[q].size();
  return product;
}

bool Symbol::operator==(const Symbol& o) const {
  return n_ == o.n_ && std::equal(images_.begin(), images_.begin() + n_,
                                  o.images_.begin());
}

std::strong_ordering Symbol::operator<=>(const Symbol& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  for (std::size_t q = 0; q < n_; ++q) {
    if (auto c = images_[q] <=> o.images_[q]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Symbol::hash() const {
  std::size_t h = 1469598103934665603ull ^ n_;
  for (std::size_t q = 0; q < n_; ++q) {
    h = (h ^ images_[q].bits()) * 1099511628211ull;
  }
  return h;
}

StateSet apply(const Symbol& a, StateSet s) {
  StateSet out;
  for (State q : s) out |= a.image(q);
  return out;
}

bool symbol_leq(const Symbol& b, const Symbol& a) {
  check_same_n(a, b);
  for (std::size_t q = 0; q < a.n(); ++q) {
    if (!b.image(State(q)).subset_of(a.image(State(q)))) return false;
  }
  return true;
}

Symbol symbol_union(const Symbol& a, const Symbol& b) {
  check_same_n(a, b);
  std::vector<StateSet> images(a.n());
  for (std::size_t q = 0; q < a.n(); ++q) {
    images[q] = a.image(State(q)) | b.image(State(q));
  }
  return Symbol(std::move(images));
}

Automaton::Automaton(std::size_t n, std::vector<Symbol> symbols)
    : n_(n), symbols_(std::move(symbols)) {
  check_n(n_);
  std::unordered_set<Symbol> seen;
  for (const auto& s : symbols_) {
    if (s.n() != n_) {
      throw InvalidArgument("symbol over " + std::to_string(s.n()) +
                            " states in an automaton with " +
                            std::to_string(n_));
    }
    if (!seen.insert(s).second) {
      throw InvalidArgument("duplicate symbol");
    }
  }
}

Automaton Automaton::from_symbols_dedup(std::size_t n,
                                        std::vector<Symbol> symbols) {
  std::unordered_set<Symbol> seen;
  std::vector<Symbol> unique;
  unique.reserve(symbols.size());
  for (auto& s : symbols) {
    if (seen.insert(s).second) unique.push_back(std::move(s));
  }
  return Automaton(n, std::move(unique));
}

bool Automaton::is_dfa() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](const Symbol& s) { return s.is_deterministic(); });
}

bool Automaton::contains(const Symbol& a) const {
  return index_of(a) != symbols_.size();
}

std::size_t Automaton::index_of(const Symbol& a) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), a);
  return std::size_t(it - symbols_.begin());
}

std::vector<Symbol> Automaton::sorted_symbols() const {
  auto out = symbols_;
  std::sort(out.begin(), out.end());
  return out;
}

bool Automaton::operator==(const Automaton& o) const {
  return n_ == o.n_ && symbols_.size() == o.symbols_.size() &&
         sorted_symbols() == o.sorted_symbols();
}

StateSet apply_word(const Automaton& a, const Word& w, StateSet s) {
  for (std::size_t i : w) {
    if (i >= a.size()) {
      throw InvalidArgument("word letter index " + std::to_string(i) +
                            " out of range for " + std::to_string(a.size()) +
                            " symbols");
    }
    s = apply(a.symbol(i), s);
  }
  return s;
}

BasicClassification classify_basic(const Automaton& a) {
  BasicClassification out;
  out.is_pre_basic = true;
  const auto& syms = a.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].is_identity()) out.identity_present = true;
    for (std::size_t j = 0; j < syms.size() && out.is_pre_basic; ++j) {
      if (i != j && symbol_leq(syms[i], syms[j])) out.is_pre_basic = false;
    }
  }
  out.is_basic = out.is_pre_basic && !out.identity_present;
  return out;
}

Automaton add_identity(const Automaton& a) {
  auto id = Symbol::identity(a.n());
  if (a.contains(id)) return a;
  auto syms = a.symbols();
  syms.push_back(std::move(id));
  return Automaton(a.n(), std::move(syms));
}

Automaton drop_identity(const Automaton& a) {
  std::vector<Symbol> syms;
  for (const auto& s : a.symbols()) {
    if (!s.is_identity()) syms.push_back(s);
  }
  return Automaton(a.n(), std::move(syms));
}

bool extension_leq(const Automaton& b, const Automaton& a) {
  if (a.n() != b.n()) {
    throw InvalidArgument("automata over different state counts");
  }
  for (const auto& sb : b.symbols()) {
    bool covered = std::any_of(
        a.symbols().begin(), a.symbols().end(),
        [&](const Symbol& sa) { return symbol_leq(sb, sa); });
    if (!covered) return false;
  }
  return true;
}

Symbol relabel(const Symbol& a, std::span<const State> perm) {
  std::vector<StateSet> images(a.n());
  for (std::size_t q = 0; q < a.n(); ++q) {
    StateSet img;
    for (State p : a.image(State(q))) img.insert(perm[p]);
    images[perm[q]] = img;
  }
  return Symbol(std::move(images));
}

Automaton relabel(const Automaton& a, std::span<const State> perm) {
  std::vector<Symbol> syms;
  syms.reserve(a.size());
  for (const auto& s : a.symbols()) syms.push_back(relabel(s, perm));
  return Automaton(a.n(), std::move(syms));
}

std::string CanonicalForm::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 4);
  for (auto v : code) {
    for (int shift = 12; shift >= 0; shift -= 4) out += digits[(v >> shift) & 0xF];
  }
  return out;
}

namespace {

std::vector<std::uint16_t> encode_relabeled(const Automaton& a,
                                            std::span<const State> perm,
                                            std::vector<Symbol>& scratch) {
  scratch.clear();
  for (const auto& s : a.symbols()) scratch.push_back(relabel(s, perm));
  std::sort(scratch.begin(), scratch.end());
  std::vector<std::uint16_t> code;
  code.reserve(2 + scratch.size() * a.n());
  code.push_back(std::uint16_t(a.n()));
  code.push_back(std::uint16_t(scratch.size()));
  for (const auto& s : scratch) {
    for (auto img : s.images()) code.push_back(img.bits());
  }
  return code;
}

}  // namespace

CanonicalForm canonical_form(const Automaton& a) {
  if (a.n() > kMaxCanonicalStates) {
    throw InvalidArgument("canonical form supports at most " +
                          std::to_string(kMaxCanonicalStates) + " states");
  }
  std::vector<State> perm(a.n());
  std::iota(perm.begin(), perm.end(), State(0));
  std::vector<Symbol> scratch;
  CanonicalForm best{encode_relabeled(a, perm, scratch)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto code = encode_relabeled(a, perm, scratch);
    if (code < best.code) best.code = std::move(code);
  }
  return best;
}

std::size_t automorphism_count(const Automaton& a) {
  if (a.n() > kMaxCanonicalStates) {
    throw InvalidArgument("automorphism count supports at most " +
                          std::to_string(kMaxCanonicalStates) + " states");
  }
  std::vector<State> perm(a.n());
  std::iota(perm.begin(), perm.end(), State(0));
  const auto base = a.sorted_symbols();
  std::vector<Symbol> scratch;
  std::size_t count = 0;
  do {
    scratch.clear();
    for (const auto& s : a.symbols()) scratch.push_back(relabel(s, perm));
    std::sort(scratch.begin(), scratch.end());
    if (scratch == base) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Automaton random_cnfa(std::size_t n, std::size_t symbol_count, double density,
                      std::uint64_t seed) {
  check_n(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, int(n) - 1);
  std::bernoulli_distribution extra(std::clamp(density, 0.0, 1.0));
  std::vector<Symbol> syms;
  syms.reserve(symbol_count);
  for (std::size_t k = 0; k < symbol_count; ++k) {
    std::vector<StateSet> images(n);
    for (std::size_t q = 0; q < n; ++q) {
      StateSet img = StateSet::single(State(pick(rng)));
      for (std::size_t p = 0; p < n; ++p) {
        if (extra(rng)) img.insert(State(p));
      }
      images[q] = img;
    }
    syms.emplace_back(std::move(images));
  }
  return Automaton::from_symbols_dedup(n, std::move(syms));
}

}  // namespace splitsync
