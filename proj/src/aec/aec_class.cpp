#include "muaec/aec/aec_class.hpp"

#include <algorithm>

#include "muaec/core/error.hpp"

namespace muaec {

namespace {

void require_member(const AecClass& k, const FiniteStructure& n) {
  if (!(n.vocab() == *k.vocab)) {
    fail(ErrorCode::kVocabularyMismatch, "structure is not over the vocabulary of " + k.name);
  }
  if (!k.member(n)) fail(ErrorCode::kNotAMember, "structure is not a member of " + k.name);
}

void require_within(const FiniteStructure& n, ElementSet a) {
  if (!a.within_universe(n.size())) {
    fail(ErrorCode::kPrecondition, "subset " + a.to_string() + " leaves a universe of size " +
                                       std::to_string(n.size()));
  }
}

}  // namespace

bool is_strong_subset(const AecClass& k, const FiniteStructure& n, ElementSet s) {
  auto sub = induced_substructure(n, s);
  if (!sub || !k.member(sub->structure)) return false;
  return k.strong_sub(sub->structure, n, PartialMap::from_images(sub->embedding));
}

ClosureResult generic_closure(const AecClass& k, const FiniteStructure& n, ElementSet a) {
  require_member(k, n);
  require_within(n, a);
  const ElementSet universe = n.universe();
  ElementSet running = universe;
  bool found = false;
  for_each_superset(a, universe, [&](ElementSet s) {
    // A superset of the running intersection cannot narrow it further.
    if (found && running.is_subset_of(s)) return true;
    if (is_strong_subset(k, n, s)) {
      running &= s;
      found = true;
      if (running == a) return false;
    }
    return true;
  });
  return {running, !found};
}

ElementSet closure(const AecClass& k, const FiniteStructure& n, ElementSet a) {
  if (k.fast_closure) {
    require_within(n, a);
    return k.fast_closure(n, a);
  }
  return generic_closure(k, n, a).set;
}

StrongFamily::StrongFamily(const AecClass& k, const FiniteStructure& n) : size_(n.size()) {
  require_member(k, n);
  for_each_subset_by_size(n.universe(), [&](ElementSet s) {
    if (is_strong_subset(k, n, s)) strong_.push_back(s);
    return true;
  });
  for (ElementSet s : strong_) strong_bits_.push_back(s.bits());
  std::sort(strong_bits_.begin(), strong_bits_.end());
}

bool StrongFamily::contains(ElementSet s) const {
  return std::binary_search(strong_bits_.begin(), strong_bits_.end(), s.bits());
}

ClosureResult StrongFamily::closure(ElementSet a) const {
  if (!a.within_universe(size_)) {
    fail(ErrorCode::kPrecondition, "subset " + a.to_string() + " leaves the universe");
  }
  ElementSet running = ElementSet::full(size_);
  bool found = false;
  for (ElementSet s : strong_) {
    if (a.is_subset_of(s)) {
      running &= s;
      found = true;
    }
  }
  return {running, !found};
}

ElementSet finite_character_witness(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                    std::span<const Element> targets) {
  ElementSet wanted;
  for (Element t : targets) {
    if (t >= n.size()) fail(ErrorCode::kPrecondition, "element outside the universe");
    wanted.insert(t);
  }
  if (!wanted.is_subset_of(closure(k, n, a))) {
    fail(ErrorCode::kPrecondition,
         wanted.to_string() + " is not inside the closure of " + a.to_string());
  }
  ElementSet witness;
  bool done = false;
  for_each_subset_by_size(a, [&](ElementSet candidate) {
    if (wanted.is_subset_of(closure(k, n, candidate))) {
      witness = candidate;
      done = true;
      return false;
    }
    return true;
  });
  if (!done) fail(ErrorCode::kInternalContradiction, "closure is not monotone");
  return witness;
}

ElementSet finite_character_witness(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                    Element target) {
  const Element one[] = {target};
  return finite_character_witness(k, n, a, one);
}

ElementSet image(const PartialMap& f, ElementSet s) {
  ElementSet out;
  for (Element e : s) out.insert(f.at(e));
  return out;
}

bool transport_closure_check(const AecClass& k, const FiniteStructure& m,
                             const FiniteStructure& n, const PartialMap& f, ElementSet a) {
  require_member(k, m);
  require_member(k, n);
  if (!is_substructure(m, n, f) || !k.strong_sub(m, n, f)) {
    fail(ErrorCode::kPrecondition, "map " + f.to_string() + " is not a strong embedding");
  }
  require_within(m, a);
  return image(f, closure(k, m, a)) == closure(k, n, image(f, a));
}

}  // namespace muaec
