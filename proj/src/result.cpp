#include "splitsync/result.hpp"

#include "json.hpp"

namespace splitsync {

using nlohmann::json;

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

std::vector<std::size_t> one_based(StateSet s) {
  std::vector<std::size_t> out;
  for (State q : s) out.push_back(std::size_t(q) + 1);
  return out;
}

}  // namespace

std::string to_json(const ResultDocument& d) {
  json j;
  j["schema"] = d.schema;
  j["command"] = d.command;
  put(j, "directing", d.directing);
  put(j, "length", d.length);
  put(j, "witness", d.witness);
  put(j, "sync_state", d.sync_state);
  put(j, "engine", d.engine);
  put(j, "accepted", d.accepted);
  put(j, "end_sets", d.end_sets);
  if (!d.classes.empty()) j["classes"] = d.classes;
  if (!d.bounds.empty()) j["bounds"] = d.bounds;
  put(j, "tightest", d.tightest);
  put(j, "states", d.states);
  put(j, "counts_labeled", d.counts_labeled);
  put(j, "counts_iso", d.counts_iso);
  put(j, "dfa_counts_labeled", d.dfa_counts_labeled);
  put(j, "dfa_counts_iso", d.dfa_counts_iso);
  put(j, "complete", d.complete);
  put(j, "all_verified", d.all_verified);
  if (!d.sources.empty()) {
    json& arr = j["sources"] = json::array();
    for (const auto& s : d.sources) {
      arr.push_back({{"label", s.label},
                     {"edges", s.edges},
                     {"cnfas", s.cnfas},
                     {"complete", s.complete}});
    }
  }
  if (!d.edges.empty()) {
    json& arr = j["edges"] = json::array();
    for (const auto& e : d.edges) {
      arr.push_back({{"first", e.first}, {"second", e.second}, {"state", e.state}});
    }
  }
  put(j, "short_cycle", d.short_cycle);
  if (!d.automata.empty()) j["automata"] = d.automata;
  put(j, "error", d.error);
  put(j, "exit_code", d.exit_code);
  return j.dump(2) + "\n";
}

ResultDocument result_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.byte, std::string("invalid JSON: ") + e.what());
  }
  ResultDocument d;
  try {
    d.schema = j.at("schema").get<int>();
    if (d.schema != kResultSchema) {
      throw ParseError(1, 1, "unsupported schema " + std::to_string(d.schema));
    }
    d.command = j.at("command").get<std::string>();
    get(j, "directing", d.directing);
    get(j, "length", d.length);
    get(j, "witness", d.witness);
    get(j, "sync_state", d.sync_state);
    get(j, "engine", d.engine);
    get(j, "accepted", d.accepted);
    get(j, "end_sets", d.end_sets);
    if (j.contains("classes")) d.classes = j["classes"].get<std::map<std::string, std::string>>();
    if (j.contains("bounds")) d.bounds = j["bounds"].get<std::map<std::string, std::size_t>>();
    get(j, "tightest", d.tightest);
    get(j, "states", d.states);
    get(j, "counts_labeled", d.counts_labeled);
    get(j, "counts_iso", d.counts_iso);
    get(j, "dfa_counts_labeled", d.dfa_counts_labeled);
    get(j, "dfa_counts_iso", d.dfa_counts_iso);
    get(j, "complete", d.complete);
    get(j, "all_verified", d.all_verified);
    if (j.contains("sources")) {
      for (const auto& s : j["sources"]) {
        d.sources.push_back({s.at("label").get<std::string>(), s.at("edges").get<std::size_t>(),
                             s.at("cnfas").get<std::size_t>(), s.at("complete").get<bool>()});
      }
    }
    if (j.contains("edges")) {
      for (const auto& e : j["edges"]) {
        d.edges.push_back({e.at("first").get<std::string>(), e.at("second").get<std::string>(),
                           e.at("state").get<std::size_t>()});
      }
    }
    get(j, "short_cycle", d.short_cycle);
    if (j.contains("automata")) d.automata = j["automata"].get<std::vector<std::string>>();
    get(j, "error", d.error);
    get(j, "exit_code", d.exit_code);
  } catch (const json::exception& e) {
    throw ParseError(1, 1, std::string("bad result document: ") + e.what());
  }
  return d;
}

ResultDocument directing_document(const DirectingReport& r, const AutomatonFile& file,
                                  bool with_witness) {
  ResultDocument d;
  d.command = "d3";
  d.directing = r.directing;
  d.length = r.length;
  d.engine = to_string(r.engine);
  if (r.sync_state) d.sync_state = std::size_t(*r.sync_state) + 1;
  if (with_witness && r.witness) d.witness = word_names(file, *r.witness);
  return d;
}

ResultDocument verify_document(const VerifyResult& r) {
  ResultDocument d;
  d.command = "verify";
  d.accepted = r.accepted;
  std::vector<std::vector<std::size_t>> ends;
  for (auto s : r.end_sets) ends.push_back(one_based(s));
  d.end_sets = std::move(ends);
  if (r.accepted) d.sync_state = std::size_t(r.sync_states.min()) + 1;
  return d;
}

ResultDocument classify_document(const ClassReport& r) {
  ResultDocument d;
  d.command = "classify";
  d.states = r.n;
  d.classes["cyclic"] = to_string(r.cyclic.verdict);
  d.classes["one_cluster"] = to_string(r.one_cluster.verdict);
  d.classes["monotonic"] = to_string(r.monotonic.verdict);
  d.classes["orientable"] = to_string(r.orientable.verdict);
  d.classes["strongly_eulerian"] = to_string(r.strongly_eulerian.verdict);
  d.classes["aperiodic"] = to_string(r.aperiodic_condition.verdict);
  for (const auto& b : r.bounds) d.bounds[b.bound_class] = b.value;
  d.tightest = r.tightest.bound_class;
  return d;
}

ResultDocument census_document(const CensusReport& r) {
  ResultDocument d;
  d.command = "census";
  d.states = r.n;
  d.counts_labeled = r.cnfa_count_labeled;
  d.counts_iso = r.cnfa_count_iso;
  d.dfa_counts_labeled = r.dfa_count_labeled;
  d.dfa_counts_iso = r.dfa_count_iso;
  d.complete = r.complete;
  d.all_verified = r.all_verified;
  for (const auto& s : r.sources) {
    d.sources.push_back({s.label, s.edge_count, s.cnfa_count, s.complete});
  }
  return d;
}

}  // namespace splitsync
