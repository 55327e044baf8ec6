#pragma once

#include <vector>

#include "muaec/aec/aec_class.hpp"

namespace muaec {

/// Every tuple of M with the same type as b̄ over `small` also has the same
/// type as b̄ over `a`. Realizations of the small type are searched inside
/// cl^M(small) when b̄ lies there, else over all tuples of M. Throws
/// kPrecondition unless small ⊆ a ⊆ M and b̄ ⊆ M.
bool isolates(const AecClass& k, const FiniteStructure& m, ElementSet a, ElementSet small,
              std::span<const Element> b);

struct RealizationRow {
  Tuple tuple;
  /// Index of the tuple's type over A among the distinct types in the table
  /// (0 is b̄'s own type).
  std::size_t type_over_a = 0;
};

struct IsolationResult {
  /// First A0 ⊆ A with b̄ ⊆ cl(A0).
  ElementSet a0;
  ElementSet a1;
  /// Realizations of gtp(b̄/A0; M), lexicographic.
  std::vector<RealizationRow> table;
  /// Elements of A added to A0, in order.
  std::vector<Element> additions;
  /// |A0| + n(n-1)/2 for n = table size.
  std::size_t budget = 0;
};

/// Grows A0 by elements of A until any two realizations of gtp(b̄/A0) with
/// distinct types over A already have distinct types over A1. Each round adds
/// the least element separating some open pair, or the least remaining
/// element when none does. The result is checked with isolates(). Throws
/// kOutOfClosure when b̄ ⊄ cl^M(A), kInternalContradiction when A runs out
/// or the check fails.
IsolationResult find_isolating_base(const AecClass& k, const FiniteStructure& m, ElementSet a,
                                    std::span<const Element> b);

}  // namespace muaec
