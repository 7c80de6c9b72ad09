#ifndef SPLITSYNC_FORMAT_HPP
#define SPLITSYNC_FORMAT_HPP

// Automaton text format.
//
//   # comment lines start with '#'
//   cnfa 3
//   sym a : 1,3 ; 2 ; 1
//   sym b : 2 ; 1 ; 2,3
//
// The header is `cnfa <n>` or `dfa <n>` (n <= 16). Each `sym` line names a
// symbol and lists one image per state, separated by ';'. An image is a
// comma-separated strictly ascending list of 1-based states. A `dfa` header
// requires singleton images. Duplicate symbol bodies and duplicate names are
// rejected. Names are display metadata and play no role in equality.

#include <string>
#include <string_view>
#include <vector>

#include "splitsync/core.hpp"

namespace splitsync {

enum class FileKind { kCnfa, kDfa };

struct AutomatonFile {
  FileKind kind = FileKind::kCnfa;
  Automaton automaton;
  std::vector<std::string> names;  // one per symbol
};

// Throws ParseError with a 1-based line and column.
AutomatonFile parse_automaton(std::string_view text);

// Canonical text: header, then one `sym` line per symbol in order, single
// spaces around ':' and ';', trailing newline. No comments.
std::string serialize(const AutomatonFile& file);

// Uses default_names() and picks `dfa` when every symbol is deterministic.
std::string serialize(const Automaton& a);
AutomatonFile with_default_names(const Automaton& a);

// a, b, c, ... in symbol order (s27, s28, ... past z); the identity symbol
// is called "id".
std::vector<std::string> default_names(const Automaton& a);

// "1,3" for {1,3}.
std::string format_image(StateSet s);

// Reads and parses a file. Throws Error on I/O failure, ParseError on bad
// content (the message names the path).
AutomatonFile load_automaton_file(const std::string& path);
void save_automaton_file(const std::string& path, const AutomatonFile& file);

// "a,b,a,b" -> indices; throws InvalidArgument on unknown names.
Word parse_word(const AutomatonFile& file, std::string_view text);
std::vector<std::string> word_names(const AutomatonFile& file, const Word& w);

}  // namespace splitsync

#endif  // SPLITSYNC_FORMAT_HPP
