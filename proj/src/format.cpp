#include "splitsync/format.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace splitsync {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '+' || c == '.' || c == '\'';
}

// Cursor over one line; columns are 1-based.
class LineReader {
 public:
  LineReader(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  void skip_spaces() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_spaces();
    return pos_ >= line_.size();
  }
  char peek() {
    skip_spaces();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }
  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_no_, column(), message);
  }
  [[noreturn]] void fail_at(std::size_t column, const std::string& message) const {
    throw ParseError(line_no_, column, message);
  }

  void expect(char c, const std::string& what) {
    if (peek() != c) fail("expected " + what);
    ++pos_;
  }

  std::string word() {
    skip_spaces();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
    return std::string(line_.substr(start, pos_ - start));
  }

  // Unsigned decimal; returns false when no digit is present.
  bool number(unsigned long& out, std::size_t& column) {
    skip_spaces();
    column = pos_ + 1;
    std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < line_.size() &&
           std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
      v = v * 10 + unsigned(line_[pos_] - '0');
      if (v > 1'000'000) fail_at(column, "number too large");
      ++pos_;
    }
    out = v;
    return pos_ > start;
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

StateSet parse_image(LineReader& r, std::size_t n, std::size_t state_no) {
  StateSet img;
  int last = -1;
  if (r.peek() == ';' || r.at_end()) {
    r.fail("empty image for state " + std::to_string(state_no));
  }
  for (;;) {
    unsigned long v = 0;
    std::size_t col = 0;
    if (!r.number(v, col)) r.fail("expected a state number");
    if (v < 1 || v > n) {
      r.fail_at(col, "state " + std::to_string(v) + " out of range 1.." +
                         std::to_string(n));
    }
    if (int(v) <= last) r.fail_at(col, "image states must be strictly ascending");
    last = int(v);
    img.insert(State(v - 1));
    if (r.peek() != ',') break;
    r.expect(',', "','");
  }
  return img;
}

}  // namespace

AutomatonFile parse_automaton(std::string_view text) {
  AutomatonFile file;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Symbol> symbols;
  std::unordered_set<Symbol> bodies;
  std::unordered_set<std::string> names;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    LineReader r(line, line_no);
    if (r.at_end() || r.peek() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t keyword_col = r.column();
    const std::string keyword = r.word();
    if (!have_header) {
      if (keyword != "cnfa" && keyword != "dfa") {
        r.fail_at(keyword_col, "bad header: expected 'cnfa <n>' or 'dfa <n>'");
      }
      file.kind = keyword == "dfa" ? FileKind::kDfa : FileKind::kCnfa;
      unsigned long v = 0;
      std::size_t col = 0;
      if (!r.number(v, col)) r.fail("bad header: missing state count");
      if (v < 1 || v > kMaxStates) {
        r.fail_at(col, "bad header: state count must be in 1.." +
                           std::to_string(kMaxStates));
      }
      if (!r.at_end()) r.fail("bad header: unexpected trailing text");
      n = v;
      have_header = true;
    } else {
      if (keyword != "sym") r.fail_at(keyword_col, "expected 'sym'");
      const std::size_t name_col = r.column() + 1;
      std::string name = r.word();
      if (name.empty()) r.fail("expected a symbol name");
      if (!names.insert(name).second) {
        r.fail_at(name_col, "duplicate symbol name '" + name + "'");
      }
      r.expect(':', "':' after symbol name");
      std::vector<StateSet> images;
      for (std::size_t q = 1; q <= n; ++q) {
        images.push_back(parse_image(r, n, q));
        if (q < n) r.expect(';', "';' (symbol needs " + std::to_string(n) + " images)");
      }
      if (!r.at_end()) {
        r.fail(r.peek() == ';' ? "too many images (expected " +
                                     std::to_string(n) + ")"
                               : "unexpected trailing text");
      }
      Symbol sym(std::move(images));
      if (file.kind == FileKind::kDfa && !sym.is_deterministic()) {
        r.fail_at(name_col, "dfa header requires singleton images");
      }
      if (!bodies.insert(sym).second) {
        r.fail_at(name_col, "duplicate symbol body '" + name + "'");
      }
      symbols.push_back(std::move(sym));
      file.names.push_back(std::move(name));
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, 1, "bad header: missing header");
  file.automaton = Automaton(n, std::move(symbols));
  return file;
}

std::string format_image(StateSet s) {
  std::string out;
  for (State q : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(q + 1);
  }
  return out;
}

std::string serialize(const AutomatonFile& file) {
  const Automaton& a = file.automaton;
  std::ostringstream out;
  out << (file.kind == FileKind::kDfa ? "dfa " : "cnfa ") << a.n() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << "sym " << file.names.at(i) << " :";
    for (std::size_t q = 0; q < a.n(); ++q) {
      out << (q ? " ; " : " ") << format_image(a.symbol(i).image(State(q)));
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> default_names(const Automaton& a) {
  std::vector<std::string> names;
  std::size_t next = 0;
  for (const auto& s : a.symbols()) {
    if (s.is_identity()) {
      names.push_back("id");
      continue;
    }
    names.push_back(next < 26 ? std::string(1, char('a' + next))
                              : "s" + std::to_string(next + 1));
    ++next;
  }
  return names;
}

AutomatonFile with_default_names(const Automaton& a) {
  AutomatonFile f;
  f.kind = a.is_dfa() ? FileKind::kDfa : FileKind::kCnfa;
  f.automaton = a;
  f.names = default_names(a);
  return f;
}

std::string serialize(const Automaton& a) { return serialize(with_default_names(a)); }

AutomatonFile load_automaton_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_automaton(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

void save_automaton_file(const std::string& path, const AutomatonFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize(file);
  if (!out) throw Error("write failed for '" + path + "'");
}

Word parse_word(const AutomatonFile& file, std::string_view text) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < file.names.size(); ++i) index[file.names[i]] = i;
  Word w;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string token(text.substr(start, end - start));
    while (!token.empty() && is_space(token.back())) token.pop_back();
    while (!token.empty() && is_space(token.front())) token.erase(token.begin());
    auto it = index.find(token);
    if (it == index.end()) {
      throw InvalidArgument("unknown symbol '" + token + "' in word");
    }
    w.push_back(it->second);
    start = end + 1;
  }
  return w;
}

std::vector<std::string> word_names(const AutomatonFile& file, const Word& w) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (auto i : w) out.push_back(file.names.at(i));
  return out;
}

}  // namespace splitsync
