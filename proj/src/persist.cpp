#include "splitsync/persist.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace splitsync {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string numbered(const char* prefix, std::size_t i, int width, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s-%0*zu.%s", prefix, width, i + 1, ext);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open '" + p.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !(out << bytes)) throw Error("cannot write '" + p.string() + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json file_entry(const fs::path& dir, const std::string& name, const std::string& text) {
  write_file(dir / name, text);
  return {{"file", name}, {"fnv1a", hex64(fnv1a(text))}};
}

Automaton load_checked(const fs::path& dir, const json& entry) {
  const std::string name = entry.at("file").get<std::string>();
  const fs::path p = dir / name;
  const std::string text = read_file(p);
  if (hex64(fnv1a(text)) != entry.at("fnv1a").get<std::string>()) {
    throw Error("census file '" + p.string() + "' does not match its index hash");
  }
  try {
    return parse_automaton(text).automaton;
  } catch (const ParseError& e) {
    throw Error("census file '" + p.string() + "': " + e.what());
  }
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string checkpoint_path(const std::string& dir) {
  return (fs::path(dir) / "search.checkpoint").string();
}

void persist_census(const CensusReport& r, const std::string& dir_name) {
  const fs::path dir(dir_name);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());

  json index;
  index["schema"] = 1;
  index["n"] = r.n;
  index["dfa_count_labeled"] = r.dfa_count_labeled;
  index["dfa_count_iso"] = r.dfa_count_iso;
  index["cnfa_count_labeled"] = r.cnfa_count_labeled;
  index["cnfa_count_iso"] = r.cnfa_count_iso;
  index["isomorphic_collisions"] = r.isomorphic_collisions;
  index["complete"] = r.complete;
  index["all_verified"] = r.all_verified;
  json& sources = index["sources"] = json::array();
  for (std::size_t i = 0; i < r.sources.size(); ++i) {
    const auto& s = r.sources[i];
    json e = file_entry(dir, numbered("source", i, 2, "dfa"), serialize(s.dfa));
    e["label"] = s.label;
    e["edge_count"] = s.edge_count;
    e["cnfa_count"] = s.cnfa_count;
    e["complete"] = s.complete;
    e["used_bruteforce"] = s.used_bruteforce;
    sources.push_back(std::move(e));
  }
  json& members = index["members"] = json::array();
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    const auto& m = r.members[i];
    json e = file_entry(dir, numbered("member", i, 4, m.cnfa.is_dfa() ? "dfa" : "cnfa"),
                        serialize(m.cnfa));
    e["source"] = m.source;
    e["d3"] = m.d3;
    e["d3_oracle"] = m.d3_oracle ? json(*m.d3_oracle) : json(nullptr);
    e["verified"] = m.verified;
    members.push_back(std::move(e));
  }
  write_file(dir / "index.json", index.dump(2) + "\n");
}

CensusReport load_census(const std::string& dir_name) {
  const fs::path dir(dir_name);
  const fs::path index_path = dir / "index.json";
  CensusReport r;
  try {
    const json index = json::parse(read_file(index_path));
    if (index.at("schema").get<int>() != 1) throw Error("unsupported index schema");
    r.n = index.at("n").get<std::size_t>();
    r.dfa_count_labeled = index.at("dfa_count_labeled").get<std::size_t>();
    r.dfa_count_iso = index.at("dfa_count_iso").get<std::size_t>();
    r.cnfa_count_labeled = index.at("cnfa_count_labeled").get<std::size_t>();
    r.cnfa_count_iso = index.at("cnfa_count_iso").get<std::size_t>();
    r.isomorphic_collisions = index.at("isomorphic_collisions").get<std::size_t>();
    r.complete = index.at("complete").get<bool>();
    r.all_verified = index.at("all_verified").get<bool>();
    for (const auto& e : index.at("sources")) {
      CensusSource s;
      s.dfa = load_checked(dir, e);
      s.label = e.at("label").get<std::string>();
      s.edge_count = e.at("edge_count").get<std::size_t>();
      s.cnfa_count = e.at("cnfa_count").get<std::size_t>();
      s.complete = e.at("complete").get<bool>();
      s.used_bruteforce = e.at("used_bruteforce").get<bool>();
      r.sources.push_back(std::move(s));
    }
    for (const auto& e : index.at("members")) {
      CensusMember m;
      m.cnfa = load_checked(dir, e);
      m.source = e.at("source").get<std::size_t>();
      m.d3 = e.at("d3").get<std::size_t>();
      if (!e.at("d3_oracle").is_null()) m.d3_oracle = e.at("d3_oracle").get<std::size_t>();
      m.verified = e.at("verified").get<bool>();
      r.members.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error("malformed census index '" + index_path.string() + "': " + e.what());
  }
  return r;
}

}  // namespace splitsync
