#include "muaec/core/element_set.hpp"

#include <algorithm>

#include "muaec/core/error.hpp"

namespace muaec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kVocabularyMismatch: return "distinct-signature";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kNotAMember: return "class-membership";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kCoherence: return "coherence";
    case ErrorCode::kParameterMismatch: return "parameter-set-mismatch";
    case ErrorCode::kOutOfClosure: return "out-of-closure";
    case ErrorCode::kNotInP: return "not-in-P";
    case ErrorCode::kInternalContradiction: return "internal-contradiction";
    case ErrorCode::kIncompleteCatalog: return "incomplete-catalog";
    case ErrorCode::kCompletenessViolation: return "completeness-violation";
    case ErrorCode::kAmalgamationFailure: return "amalgamation-failure";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

ElementSet::ElementSet(std::initializer_list<Element> elements) {
  for (Element e : elements) insert(e);
}

ElementSet ElementSet::full(std::size_t n) {
  if (n > kCapacity) fail(ErrorCode::kInvalidArgument, "universe larger than 64 elements");
  if (n == kCapacity) return ElementSet(~std::uint64_t{0});
  return ElementSet((std::uint64_t{1} << n) - 1);
}

void ElementSet::insert(Element e) {
  if (e >= kCapacity) fail(ErrorCode::kInvalidArgument, "element index exceeds 63");
  bits_ |= std::uint64_t{1} << e;
}

bool ElementSet::size_lex_less(ElementSet a, ElementSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto ea = a.elements();
  const auto eb = b.elements();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (Element e : *this) out.push_back(e);
  return out;
}

std::string ElementSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (Element e : *this) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

std::vector<ElementSet> subsets_by_size(ElementSet set) {
  std::vector<ElementSet> out;
  out.reserve(std::size_t{1} << set.size());
  for_each_subset_by_size(set, [&](ElementSet s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace muaec
