#include "splitsync/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "splitsync/classes.hpp"
#include "splitsync/critical.hpp"
#include "splitsync/directing.hpp"
#include "splitsync/format.hpp"
#include "splitsync/persist.hpp"
#include "splitsync/result.hpp"
#include "splitsync/split.hpp"

namespace splitsync {

namespace {

struct Options {
  bool json = false;
  std::string file;
  std::string engine = "implicit";
  bool witness = false;
  std::string out_path;
  std::vector<std::string> at;
  std::size_t states = 0;
  std::size_t jobs = 1;
  std::string tier = "standard";
  std::string name;
  std::optional<std::size_t> catalog_n;
  std::string word;
};

void row(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(20) << (key + ": ") << value << '\n';
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string set_text(const std::vector<std::size_t>& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
  return t + "}";
}

int cmd_d3(const Options& o, ResultDocument& doc, std::ostream& out) {
  const AutomatonFile file = load_automaton_file(o.file);
  DirectingReport r;
  if (o.engine == "implicit") {
    r = d3_implicit(file.automaton);
  } else if (o.engine == "split") {
    r = d3_via_split(file.automaton);
  } else {
    r = d3_oracle(file.automaton);
  }
  doc = directing_document(r, file, o.witness);
  if (!o.json) {
    row(out, "directing", yes_no(r.directing));
    if (r.length) row(out, "length", std::to_string(*r.length));
    if (doc.witness) row(out, "witness", join(*doc.witness, ","));
    if (doc.sync_state) row(out, "sync state", std::to_string(*doc.sync_state));
    row(out, "engine", *doc.engine);
  }
  return r.directing ? kExitOk : kExitNotDirecting;
}

int cmd_split(const Options& o, ResultDocument& doc, std::ostream& out) {
  const AutomatonFile file = load_automaton_file(o.file);
  Automaton result;
  if (!o.at.empty()) {
    const unsigned long q = std::stoul(o.at[0]);
    if (q < 1 || q > file.automaton.n()) throw InvalidArgument("--at: state out of range");
    const auto it = std::find(file.names.begin(), file.names.end(), o.at[1]);
    if (it == file.names.end()) throw InvalidArgument("--at: unknown symbol '" + o.at[1] + "'");
    result = split_at(file.automaton, State(q - 1), std::size_t(it - file.names.begin()));
  } else {
    result = full_split(file.automaton).automaton;
  }
  const std::string text = serialize(result);
  doc.command = "split";
  doc.automata.push_back(text);
  if (!o.out_path.empty()) save_automaton_file(o.out_path, with_default_names(result));
  if (!o.json) out << text;
  return kExitOk;
}

int cmd_classify(const Options& o, ResultDocument& doc, std::ostream& out) {
  const AutomatonFile file = load_automaton_file(o.file);
  doc = classify_document(classify(file.automaton));
  if (!o.json) {
    for (const auto& [name, verdict] : doc.classes) row(out, name, verdict);
    for (const auto& [name, value] : doc.bounds) row(out, "bound " + name, std::to_string(value));
    row(out, "tightest", *doc.tightest);
  }
  return kExitOk;
}

int cmd_graph(const Options& o, ResultDocument& doc, std::ostream& out) {
  const AutomatonFile file = load_automaton_file(o.file);
  const SymbolGraph g = symbol_graph(file.automaton);
  doc.command = "graph";
  for (const auto& e : g.edges) {
    doc.edges.push_back({file.names[e.first], file.names[e.second], std::size_t(e.differing) + 1});
  }
  doc.short_cycle = has_short_cycle(g);
  if (!o.json) {
    row(out, "nodes", std::to_string(g.node_count));
    row(out, "edges", std::to_string(g.edges.size()));
    for (const auto& e : doc.edges) {
      out << "  " << e.first << " -- " << e.second << "  (state " << e.state << ")\n";
    }
    row(out, "3/4-cycle", yes_no(*doc.short_cycle));
  }
  return kExitOk;
}

int cmd_inverse_split(const Options& o, ResultDocument& doc, std::ostream& out) {
  const AutomatonFile file = load_automaton_file(o.file);
  InverseSplit inv = inverse_split_enumerate(file.automaton);
  if (!inv.complete && file.automaton.n() == 2) {
    inv.automata = inverse_split_bruteforce(file.automaton);
    inv.complete = true;
  }
  doc.command = "inverse-split";
  doc.complete = inv.complete;
  doc.counts_labeled = inv.automata.size();
  for (const auto& a : inv.automata) doc.automata.push_back(serialize(a));
  if (!o.json) {
    row(out, "edges", std::to_string(inv.edge_count));
    row(out, "automata", std::to_string(inv.automata.size()));
    row(out, "complete", yes_no(inv.complete));
    for (const auto& t : doc.automata) out << '\n' << t;
  }
  return kExitOk;
}

int cmd_census(const Options& o, ResultDocument& doc, std::ostream& out) {
  CensusOptions co;
  co.jobs = o.jobs;
  if (o.tier == "extended") {
    if (o.out_path.empty()) throw InvalidArgument("--tier extended needs --out");
    std::filesystem::create_directories(o.out_path);
    co.search.checkpoint_path = checkpoint_path(o.out_path);
  }
  const CensusReport r = census(o.states, co);
  if (!o.out_path.empty()) persist_census(r, o.out_path);
  doc = census_document(r);
  if (!o.json) {
    out << std::left << std::setw(12) << "source" << std::setw(8) << "edges"
        << std::setw(8) << "cnfas" << "complete\n";
    for (const auto& s : doc.sources) {
      out << std::setw(12) << s.label << std::setw(8) << s.edges << std::setw(8) << s.cnfas
          << yes_no(s.complete) << '\n';
    }
    row(out, "dfas", std::to_string(r.dfa_count_labeled) + " labeled, " +
                         std::to_string(r.dfa_count_iso) + " up to iso");
    row(out, "cnfas", std::to_string(r.cnfa_count_labeled) + " labeled, " +
                          std::to_string(r.cnfa_count_iso) + " up to iso");
    row(out, "complete", yes_no(r.complete));
    row(out, "verified", yes_no(r.all_verified));
  }
  return kExitOk;
}

int cmd_catalog(const Options& o, ResultDocument& doc, std::ostream& out) {
  const CatalogEntry e = catalog(o.name, o.catalog_n);
  doc.command = "catalog";
  doc.states = e.file.automaton.n();
  doc.length = e.expected_length;
  doc.automata.push_back(serialize(e.file));
  if (!o.json) {
    row(out, "name", e.name);
    row(out, "provenance", to_string(e.provenance));
    row(out, "length", std::to_string(e.expected_length));
    out << doc.automata.front();
  }
  return kExitOk;
}

int cmd_verify(const Options& o, ResultDocument& doc, std::ostream& out) {
  const AutomatonFile file = load_automaton_file(o.file);
  const Word w = parse_word(file, o.word);
  doc = verify_document(verify_d3(file.automaton, w));
  if (!o.json) {
    row(out, "accepted", yes_no(*doc.accepted));
    if (doc.sync_state) row(out, "sync state", std::to_string(*doc.sync_state));
    const auto& ends = *doc.end_sets;
    for (std::size_t q = 0; q < ends.size(); ++q) {
      row(out, std::to_string(q + 1) + "." + join(word_names(file, w), ""), set_text(ends[q]));
    }
  }
  return *doc.accepted ? kExitOk : kExitNotDirecting;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directing words of complete nondeterministic automata", "splitsync"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Print only the JSON result document");

  auto* d3 = app.add_subcommand("d3", "Shortest D3-directing word");
  d3->add_option("file", o.file)->required();
  d3->add_option("--engine", o.engine)->check(CLI::IsMember({"implicit", "split", "oracle"}));
  d3->add_flag("--witness", o.witness, "Include a shortest word");

  auto* split = app.add_subcommand("split", "Split into a DFA");
  split->add_option("file", o.file)->required();
  split->add_option("-o", o.out_path, "Write the result to a file");
  split->add_option("--at", o.at, "Single step at <state> <symbol>")->expected(2);

  auto* cls = app.add_subcommand("classify", "Class membership and bounds");
  cls->add_option("file", o.file)->required();

  auto* graph = app.add_subcommand("graph", "Symbol graph of a DFA");
  graph->add_option("file", o.file)->required();

  auto* inv = app.add_subcommand("inverse-split", "CNFAs N(D, E') for a DFA");
  inv->add_option("file", o.file)->required();

  auto* cen = app.add_subcommand("census", "Basic critical CNFAs on n states");
  cen->add_option("--states", o.states)->required()->check(CLI::Range(2, 6));
  cen->add_option("--jobs", o.jobs)->check(CLI::Range(1, 256));
  cen->add_option("--out", o.out_path, "Persist members and index here");
  cen->add_option("--tier", o.tier)->check(CLI::IsMember({"standard", "extended"}));

  auto* cat = app.add_subcommand("catalog", "Named critical automata");
  cat->add_option("name", o.name)->required();
  cat->add_option("--n", o.catalog_n);

  auto* ver = app.add_subcommand("verify", "Check a word");
  ver->add_option("file", o.file)->required();
  ver->add_option("--word", o.word)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  ResultDocument doc;
  int code = kExitOk;
  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "d3") code = cmd_d3(o, doc, out);
    else if (command == "split") code = cmd_split(o, doc, out);
    else if (command == "classify") code = cmd_classify(o, doc, out);
    else if (command == "graph") code = cmd_graph(o, doc, out);
    else if (command == "inverse-split") code = cmd_inverse_split(o, doc, out);
    else if (command == "census") code = cmd_census(o, doc, out);
    else if (command == "catalog") code = cmd_catalog(o, doc, out);
    else code = cmd_verify(o, doc, out);
  } catch (const BudgetExceeded& e) {
    code = kExitBudget;
    doc = {};
    doc.error = e.what();
  } catch (const CatalogError& e) {
    code = kExitCatalog;
    doc = {};
    doc.error = e.what();
  } catch (const std::exception& e) {
    code = kExitInputError;
    doc = {};
    doc.error = e.what();
  }
  doc.command = command;
  if (doc.error) {
    doc.exit_code = code;
    if (!o.json) err << "error: " << *doc.error << '\n';
  }
  if (o.json) out << to_json(doc);
  return code;
}

}  // namespace splitsync
