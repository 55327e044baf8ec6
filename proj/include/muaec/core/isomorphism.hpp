#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "muaec/core/partial_map.hpp"
#include "muaec/core/structure.hpp"

namespace muaec {

/// Total isomorphisms a -> b extending `anchor`, at most `limit` of them
/// (nullopt = all). Enumeration order is fixed: a's free elements are assigned
/// in a label-derived order, candidates in increasing order. Throws
/// kVocabularyMismatch on distinct signatures and kPrecondition when the
/// anchor leaves the universes.
std::vector<PartialMap> find_isomorphisms(const FiniteStructure& a, const FiniteStructure& b,
                                          const PartialMap& anchor = {},
                                          std::optional<std::size_t> limit = std::nullopt);

bool are_isomorphic(const FiniteStructure& a, const FiniteStructure& b,
                    const PartialMap& anchor = {});

/// Automorphisms fixing `fixed` pointwise.
std::vector<PartialMap> automorphisms(const FiniteStructure& s, ElementSet fixed = {});

/// Colour key attached to an element before canonical labeling; elements with
/// distinct keys are never exchanged, and keys appear in the canonical code.
using ColorKey = std::vector<std::int64_t>;

struct CanonicalForm {
  /// labeling[v] = canonical position of v.
  std::vector<Element> labeling;
  /// Keys and tables in canonical order; equal codes <=> isomorphic as
  /// key-coloured structures (over the same vocabulary).
  std::string code;
};

/// Individualization-refinement canonical labeling with automorphism pruning.
CanonicalForm canonical_form(const FiniteStructure& s, std::span<const ColorKey> keys);
CanonicalForm canonical_form(const FiniteStructure& s);

}  // namespace muaec
