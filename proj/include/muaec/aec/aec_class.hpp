#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "muaec/core/element_set.hpp"
#include "muaec/core/partial_map.hpp"
#include "muaec/core/structure.hpp"

namespace muaec {

using MemberPredicate = std::function<bool(const FiniteStructure&)>;
/// strong_sub(small, big, inclusion): is small strong in big along inclusion.
using StrongPredicate =
    std::function<bool(const FiniteStructure&, const FiniteStructure&, const PartialMap&)>;
using ClosureProcedure = std::function<ElementSet(const FiniteStructure&, ElementSet)>;

/// A class K of finite structures with its strong-substructure ordering.
/// Predicates must be pure and safe to call concurrently.
struct AecClass {
  std::string name;
  VocabularyPtr vocab;
  MemberPredicate member;
  StrongPredicate strong_sub;
  /// Optional class-specific closure; empty when absent.
  ClosureProcedure fast_closure;
  std::string docs;
};

using AecClassPtr = std::shared_ptr<const AecClass>;

/// True iff the substructure induced on S exists (S closed under functions),
/// is a member, and is strong in N via the inclusion.
bool is_strong_subset(const AecClass& k, const FiniteStructure& n, ElementSet s);

struct ClosureResult {
  ElementSet set;
  /// Set when no strong subset contains A; `set` is then the full universe.
  bool no_strong_subset_found = false;
};

/// Intersection of every strong S ⊆ N with A ⊆ S, enumerating supersets of A
/// by size and stopping once the running intersection equals A. Throws
/// kNotAMember when N is not in K, kPrecondition when A leaves N.
ClosureResult generic_closure(const AecClass& k, const FiniteStructure& n, ElementSet a);

/// cl^N(A) through the class's fast_closure when present, else generic.
ElementSet closure(const AecClass& k, const FiniteStructure& n, ElementSet a);

/// All strong subsets of one structure, computed once; closures are then
/// intersections over this family. Immutable after construction, so it can
/// be shared across threads.
class StrongFamily {
 public:
  StrongFamily(const AecClass& k, const FiniteStructure& n);

  const std::vector<ElementSet>& strong_subsets() const { return strong_; }
  bool contains(ElementSet s) const;
  ClosureResult closure(ElementSet a) const;

 private:
  std::size_t size_;
  std::vector<ElementSet> strong_;
  std::vector<std::uint64_t> strong_bits_;  // sorted, for lookup
};

/// The first A0 ⊆ A (size, then lexicographic) with a ∈ cl^N(A0); such an A0
/// is inclusion-minimal. Throws kPrecondition when a ∉ cl^N(A).
ElementSet finite_character_witness(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                    Element target);
/// Same for a tuple: first A0 ⊆ A with every entry of `targets` in cl^N(A0).
ElementSet finite_character_witness(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                    std::span<const Element> targets);

/// f[cl^M(A)] == cl^N(f[A]) for a strong embedding f : M -> N. Throws
/// kPrecondition when f is not a strong embedding of members.
bool transport_closure_check(const AecClass& k, const FiniteStructure& m,
                             const FiniteStructure& n, const PartialMap& f, ElementSet a);

/// Image of a set under a map defined on all of it.
ElementSet image(const PartialMap& f, ElementSet s);

}  // namespace muaec
