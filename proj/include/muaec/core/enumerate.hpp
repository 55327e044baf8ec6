#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "muaec/core/structure.hpp"

namespace muaec {

using StructureFilter = std::function<bool(const FiniteStructure&)>;

struct EnumerateOptions {
  std::size_t min_size = 0;
  /// Keep one representative per isomorphism class (first in enumeration order).
  bool dedup_isomorphic = false;
  /// Upper bound on the raw number of candidate tables examined.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

/// Number of raw candidates (all relation and function tables) for sizes
/// min_size..max_size, saturating at UINT64_MAX.
std::uint64_t candidate_count(const Vocabulary& vocab, std::size_t min_size,
                              std::size_t max_size);

/// Streams every structure of size in [min_size, max_size] passing `filter`,
/// by size and then by table odometer order. `visit` returns false to stop.
/// Throws kBudgetExceeded (message carries the count) before enumerating when
/// candidate_count exceeds the budget.
void enumerate_all_structures(const VocabularyPtr& vocab, std::size_t max_size,
                              const StructureFilter& filter,
                              const std::function<bool(const FiniteStructure&)>& visit,
                              const EnumerateOptions& options = {});

std::vector<FiniteStructure> all_structures(const VocabularyPtr& vocab, std::size_t max_size,
                                            const StructureFilter& filter = {},
                                            const EnumerateOptions& options = {});

}  // namespace muaec
