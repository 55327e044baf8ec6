#pragma once

#include <string>
#include <vector>

#include "muaec/core/partial_map.hpp"
#include "muaec/core/structure.hpp"

namespace muaec {

struct Arrow {
  std::size_t from = 0;
  std::size_t to = 0;
  PartialMap map;  // total on objects[from]
};

/// A finite diagram of structures and embeddings. A chain M_0 -> ... -> M_d
/// is the special case built by `chain`, which fills in every composite.
struct EmbeddingSystem {
  std::vector<FiniteStructure> objects;
  std::vector<Arrow> arrows;

  /// Chain from consecutive maps steps[i] : objects[i] -> objects[i+1];
  /// adds identities and all composites f_{i,j}.
  static EmbeddingSystem chain(std::vector<FiniteStructure> objects,
                               const std::vector<PartialMap>& steps);

  /// The arrow i -> j, or nullptr.
  const Arrow* find(std::size_t from, std::size_t to) const;
};

/// Throws kCoherence naming the first failing check: an arrow that is not an
/// embedding, a loop that is not the identity, or a triangle
/// i -> j -> k against i -> k that does not commute.
void check_coherence(const EmbeddingSystem& system);

struct Colimit {
  FiniteStructure structure;
  std::vector<PartialMap> cocone;  // one per object
};

/// Quotient of the disjoint union by x ~ f(x) for every arrow. Classes are
/// labelled by their element in the last object when they have one (so a
/// chain collapses onto its top with the top's own labels), the rest follow
/// by (object, element). Throws kCoherence when the gluing identifies two
/// elements of one object or makes a function table ambiguous.
Colimit colimit(const EmbeddingSystem& system);

}  // namespace muaec
