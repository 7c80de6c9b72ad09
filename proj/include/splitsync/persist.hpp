#ifndef SPLITSYNC_PERSIST_HPP
#define SPLITSYNC_PERSIST_HPP

// Census directories.
//
//   <dir>/index.json          counts, flags, and one entry per file
//   <dir>/source-NN.dfa       critical DFAs the members came from
//   <dir>/member-NNNN.<kind>  one file per member (.dfa or .cnfa)
//   <dir>/search.checkpoint   resumable search state (extended tier)
//
// Every file entry in the index carries the FNV-1a hash of the file bytes.

#include <cstdint>
#include <string>
#include <string_view>

#include "splitsync/critical.hpp"

namespace splitsync {

std::uint64_t fnv1a(std::string_view bytes);

// Creates `dir` if needed and overwrites earlier index and member files.
void persist_census(const CensusReport& report, const std::string& dir);

// Throws Error naming the offending file on I/O failure, malformed index, or
// hash mismatch.
CensusReport load_census(const std::string& dir);

std::string checkpoint_path(const std::string& dir);

}  // namespace splitsync

#endif  // SPLITSYNC_PERSIST_HPP
