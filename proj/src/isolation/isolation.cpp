#include "muaec/isolation/isolation.hpp"

#include <map>
#include <optional>
#include <string>

#include "muaec/core/error.hpp"
#include "muaec/galois/types.hpp"

namespace muaec {

namespace {

void check_inputs(const FiniteStructure& m, ElementSet a, ElementSet small,
                  std::span<const Element> b) {
  if (!a.within_universe(m.size())) {
    fail(ErrorCode::kPrecondition, "parameters " + a.to_string() + " leave the universe");
  }
  if (!small.is_subset_of(a)) {
    fail(ErrorCode::kPrecondition, small.to_string() + " is not inside " + a.to_string());
  }
  for (Element x : b) {
    if (x >= m.size()) fail(ErrorCode::kPrecondition, "tuple entry outside the universe");
  }
}

Tuple as_tuple(std::span<const Element> b) { return Tuple(b.begin(), b.end()); }

std::string code_over(const AecClass& k, const FiniteStructure& m, ElementSet a,
                      const Tuple& b) {
  return canonical_certificate(k, TypeLocator(m, a, b)).code;
}

}  // namespace

bool isolates(const AecClass& k, const FiniteStructure& m, ElementSet a, ElementSet small,
              std::span<const Element> b) {
  check_inputs(m, a, small, b);
  const Tuple bt = as_tuple(b);
  const auto cert = canonical_certificate(k, TypeLocator(m, small, bt));
  const TypeLocator target(m, a, bt);
  for (const Tuple& other : realizations(k, m, small, cert)) {
    if (!type_equal(k, target, TypeLocator(m, a, other))) return false;
  }
  return true;
}

IsolationResult find_isolating_base(const AecClass& k, const FiniteStructure& m, ElementSet a,
                                    std::span<const Element> b) {
  check_inputs(m, a, a, b);
  const Tuple bt = as_tuple(b);
  const ElementSet cl = closure(k, m, a);
  for (Element x : bt) {
    if (!cl.contains(x)) {
      fail(ErrorCode::kOutOfClosure,
           std::to_string(x) + " is not in the closure of " + a.to_string());
    }
  }

  IsolationResult out;
  out.a0 = finite_character_witness(k, m, a, bt);
  const auto reals =
      realizations(k, m, out.a0, canonical_certificate(k, TypeLocator(m, out.a0, bt)));
  const std::size_t n = reals.size();
  out.budget = out.a0.size() + n * (n - 1) / 2;

  std::map<std::string, std::size_t> ids{{code_over(k, m, a, bt), 0}};
  for (const Tuple& r : reals) {
    auto [it, fresh] = ids.try_emplace(code_over(k, m, a, r), ids.size());
    out.table.push_back({r, it->second});
  }

  // Pairs whose types over A differ; a pair stays open until A1 tells them apart.
  std::vector<std::pair<std::size_t, std::size_t>> open;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out.table[i].type_over_a != out.table[j].type_over_a) open.emplace_back(i, j);
    }
  }
  auto still_open = [&](ElementSet base) {
    std::vector<std::string> codes;
    codes.reserve(n);
    for (const Tuple& r : reals) codes.push_back(code_over(k, m, base, r));
    std::vector<std::pair<std::size_t, std::size_t>> left;
    for (const auto& [i, j] : open) {
      if (codes[i] == codes[j]) left.emplace_back(i, j);
    }
    return left;
  };

  out.a1 = out.a0;
  open = still_open(out.a1);
  while (!open.empty()) {
    const ElementSet rest = a.minus(out.a1);
    if (rest.empty()) {
      fail(ErrorCode::kInternalContradiction,
           "no finite part of " + a.to_string() + " separates the realizations");
    }
    std::optional<Element> pick;
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (Element x : rest) {
      ElementSet trial = out.a1;
      trial.insert(x);
      auto left = still_open(trial);
      if (left.size() < open.size()) {
        pick = x;
        next = std::move(left);
        break;
      }
    }
    if (!pick) {
      pick = *rest.begin();
      next = open;
    }
    out.a1.insert(*pick);
    out.additions.push_back(*pick);
    open = std::move(next);
  }

  if (!isolates(k, m, a, out.a1, bt)) {
    fail(ErrorCode::kInternalContradiction,
         out.a1.to_string() + " separates the realizations but does not isolate");
  }
  return out;
}

}  // namespace muaec
