// Regenerates the pinned catalog data files from exhaustive searches.
//
//   derive_catalog <out-dir>
//
// a3/a4 get the symbol labeling a..e under which their critical
// restrictions and symbol-graph edge counts match the published tables.

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "splitsync/critical.hpp"
#include "splitsync/directing.hpp"

using namespace splitsync;

namespace {

// Restriction label set -> number of edges in G(restriction + id).
using Table = std::map<std::string, std::size_t>;

const Table kA3Table = {
    {"abcde", 3}, {"abcd", 2}, {"abce", 2}, {"abde", 2}, {"acde", 1},
    {"bcde", 3},  {"abc", 2},  {"abd", 1},  {"abe", 1},  {"acd", 0},
    {"ade", 1},   {"bce", 2},  {"cde", 1},  {"ab", 1},   {"ad", 0},
};

const Table kA4Table = {
    {"abcde", 2}, {"abcd", 2}, {"abce", 1}, {"abde", 0}, {"bcde", 2},
    {"abc", 1},   {"abd", 0},  {"abe", 0},  {"bde", 0},  {"ab", 0},
};

Automaton restrict(const std::vector<Symbol>& syms, const std::string& labels,
                   std::size_t n, bool with_id) {
  std::vector<Symbol> out;
  for (char c : labels) out.push_back(syms[std::size_t(c - 'a')]);
  if (with_id) out.push_back(Symbol::identity(n));
  return Automaton(n, std::move(out));
}

// Labelings of the five symbols under which the table is reproduced exactly,
// including that no other subset is critical.
std::vector<std::vector<Symbol>> matching_labelings(const Automaton& dfa,
                                                    const Table& table) {
  const std::size_t n = dfa.n();
  std::vector<std::size_t> perm(dfa.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::vector<std::vector<Symbol>> out;
  do {
    std::vector<Symbol> syms;
    for (auto i : perm) syms.push_back(dfa.symbol(i));
    bool ok = true;
    for (unsigned mask = 1; mask < 32 && ok; ++mask) {
      std::string labels;
      for (unsigned b = 0; b < 5; ++b) {
        if (mask >> b & 1) labels += char('a' + b);
      }
      const auto r = dfa_shortest_sync(restrict(syms, labels, n, false));
      const bool critical = r.directing && *r.length == critical_length(n);
      auto it = table.find(labels);
      if (critical != (it != table.end())) {
        ok = false;
      } else if (critical) {
        ok = symbol_graph(restrict(syms, labels, n, true)).edges.size() == it->second;
      }
    }
    if (ok) out.push_back(std::move(syms));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

void write(const std::string& dir, const std::string& name,
           const std::vector<Symbol>& syms, std::size_t n) {
  AutomatonFile f;
  f.kind = FileKind::kDfa;
  f.automaton = Automaton(n, syms);
  for (std::size_t i = 0; i < syms.size(); ++i) f.names.push_back(std::string(1, char('a' + i)));
  save_automaton_file(dir + "/" + name + ".dfa", f);
  std::cout << name << ": " << syms.size() << " symbols\n";
}

const Automaton& largest(const std::vector<Automaton>& dfas) {
  return *std::max_element(dfas.begin(), dfas.end(), [](const auto& x, const auto& y) {
    return x.size() < y.size();
  });
}

bool contained_up_to_iso(const Automaton& small, const Automaton& big) {
  for (unsigned mask = 1; mask < (1u << big.size()); ++mask) {
    std::vector<Symbol> syms;
    for (std::size_t i = 0; i < big.size(); ++i) {
      if (mask >> i & 1) syms.push_back(big.symbol(i));
    }
    if (syms.size() != small.size()) continue;
    if (canonical_form(Automaton(big.n(), syms)) == canonical_form(small)) return true;
  }
  return false;
}

int fail(const std::string& msg) {
  std::cerr << "derive_catalog: " << msg << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: derive_catalog <out-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];

  const auto s3 = critical_dfa_search(3);
  const Automaton& a3 = largest(s3.dfas);
  auto l3 = matching_labelings(a3, kA3Table);
  if (l3.empty()) return fail("no labeling of the 3-state maximal DFA fits the table");
  write(dir, "a3", l3.front(), 3);

  const auto s4 = critical_dfa_search(4);
  const Automaton& a4 = largest(s4.dfas);
  auto l4 = matching_labelings(a4, kA4Table);
  if (l4.empty()) return fail("no labeling of the 4-state maximal DFA fits the table");
  write(dir, "a4", l4.front(), 4);

  const Automaton c4 = cerny(4);
  std::vector<const Automaton*> rest;
  for (const auto& d : s4.dfas) {
    if (canonical_form(d) == canonical_form(c4) || contained_up_to_iso(d, a4)) continue;
    rest.push_back(&d);
  }
  if (rest.size() != 1) return fail("expected exactly one 4-state DFA outside A4 and C4");
  write(dir, "c4", c4.symbols(), 4);
  write(dir, "t42", rest.front()->symbols(), 4);

  const auto roman = fixed_alphabet_search(5, 3, critical_length(5));
  if (roman.dfas.size() != 1) return fail("expected one 5-state 3-symbol critical DFA");
  write(dir, "roman", roman.dfas.front().symbols(), 5);

  const auto kari6 = fixed_alphabet_search(6, 2, critical_length(6));
  std::vector<const Automaton*> kari;
  for (const auto& d : kari6.dfas) {
    if (canonical_form(d) != canonical_form(cerny(6))) kari.push_back(&d);
  }
  if (kari.size() != 1) return fail("expected one non-Cerny 6-state 2-symbol critical DFA");
  write(dir, "kari", kari.front()->symbols(), 6);

  std::ofstream manifest(dir + "/MANIFEST", std::ios::trunc);
  manifest << "# name expected_length\n";
  for (auto [name, n] : std::vector<std::pair<std::string, std::size_t>>{
           {"a3", 3}, {"a4", 4}, {"c4", 4}, {"t42", 4}, {"roman", 5}, {"kari", 6}}) {
    manifest << name << ' ' << critical_length(n) << '\n';
  }
  std::cout << "labelings: a3 " << l3.size() << ", a4 " << l4.size() << '\n';
  return 0;
}
