#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "muaec/core/structure.hpp"

namespace muaec {

// Corpus format: a YAML stream with one document per structure.
//
//   vocab:
//     relations: [{name: E, arity: 2}]
//     functions: [{name: s, arity: 1}]
//   size: 3
//   rels: {E: [[0, 1], [1, 0]]}
//   funs: {s: [[0, 1], [1, 2], [2, 2]]}
//
// Function rows are [args..., value] and must cover every argument tuple.

/// Throws kParse with "source:line:column" on malformed input, non-total
/// function tables and out-of-range indices.
std::vector<FiniteStructure> parse_corpus(std::string_view text,
                                          std::string_view source = "<input>");
std::string emit_corpus(std::span<const FiniteStructure> structures);

/// A file, or every *.yaml / *.yml file of a directory in name order.
/// Throws kIo when the path cannot be read.
std::vector<FiniteStructure> read_corpus(const std::filesystem::path& path);
/// Throws kIo when the file cannot be written.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace muaec
