#ifndef SPLITSYNC_RESULT_HPP
#define SPLITSYNC_RESULT_HPP

// Machine-readable result document (JSON, schema 1).
//
// Absent optional fields and empty collections are omitted from the JSON
// text, so parse(to_json(d)) == d for every document. Keys are emitted in
// sorted order, which makes the text deterministic.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitsync/classes.hpp"
#include "splitsync/critical.hpp"
#include "splitsync/directing.hpp"
#include "splitsync/format.hpp"

namespace splitsync {

inline constexpr int kResultSchema = 1;

struct EdgeDoc {
  std::string first;
  std::string second;
  std::size_t state = 0;  // 1-based

  bool operator==(const EdgeDoc&) const = default;
};

struct SourceDoc {
  std::string label;
  std::size_t edges = 0;
  std::size_t cnfas = 0;
  bool complete = false;

  bool operator==(const SourceDoc&) const = default;
};

struct ResultDocument {
  int schema = kResultSchema;
  std::string command;

  std::optional<bool> directing;
  std::optional<std::size_t> length;
  std::optional<std::vector<std::string>> witness;
  std::optional<std::size_t> sync_state;  // 1-based
  std::optional<std::string> engine;

  std::optional<bool> accepted;
  std::optional<std::vector<std::vector<std::size_t>>> end_sets;  // 1-based

  std::map<std::string, std::string> classes;  // class -> verdict
  std::map<std::string, std::size_t> bounds;
  std::optional<std::string> tightest;

  std::optional<std::size_t> states;
  std::optional<std::size_t> counts_labeled;  // CNFAs
  std::optional<std::size_t> counts_iso;
  std::optional<std::size_t> dfa_counts_labeled;
  std::optional<std::size_t> dfa_counts_iso;
  std::optional<bool> complete;
  std::optional<bool> all_verified;
  std::vector<SourceDoc> sources;

  std::vector<EdgeDoc> edges;
  std::optional<bool> short_cycle;
  std::vector<std::string> automata;  // serialized automaton texts

  std::optional<std::string> error;
  std::optional<int> exit_code;

  bool operator==(const ResultDocument&) const = default;
};

std::string to_json(const ResultDocument& doc);
// Throws ParseError on malformed JSON or a schema mismatch.
ResultDocument result_from_json(std::string_view text);

ResultDocument directing_document(const DirectingReport& r, const AutomatonFile& file,
                                  bool with_witness);
ResultDocument verify_document(const VerifyResult& r);
ResultDocument classify_document(const ClassReport& r);
ResultDocument census_document(const CensusReport& r);

}  // namespace splitsync

#endif  // SPLITSYNC_RESULT_HPP
