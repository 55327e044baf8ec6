#include "muaec/shortness/gluing.hpp"

#include <algorithm>
#include <set>

#include "muaec/core/error.hpp"
#include "muaec/galois/types.hpp"

namespace muaec {

namespace {

constexpr Element kUnset = ~Element{0};
constexpr Element kConflict = kUnset - 1;

Tuple restrict_tuple(const Tuple& t, ElementSet positions) {
  Tuple out;
  for (Element i : positions) out.push_back(t[i]);
  return out;
}

}  // namespace

GluingProblem::GluingProblem(const AecClass& k, const FiniteStructure& n1, Tuple a1,
                             const FiniteStructure& n2, Tuple a2)
    : k_(&k), n1_(&n1), n2_(&n2), a1_(std::move(a1)), a2_(std::move(a2)),
      m1_{FiniteStructure(k.vocab), {}}, m2_{FiniteStructure(k.vocab), {}} {
  if (a1_.size() != a2_.size()) {
    fail(ErrorCode::kInvalidArgument, "glued tuples must have equal length");
  }
  for (Element x : a1_) {
    if (x >= n1.size()) fail(ErrorCode::kInvalidArgument, "left tuple leaves its structure");
  }
  for (Element x : a2_) {
    if (x >= n2.size()) fail(ErrorCode::kInvalidArgument, "right tuple leaves its structure");
  }
  m1_set_ = closure(k, n1, ElementSet::of(a1_));
  m2_set_ = closure(k, n2, ElementSet::of(a2_));
  m1_ = *induced_substructure(n1, m1_set_);
  m2_ = *induced_substructure(n2, m2_set_);
  f0_ = PartialMap::from_tuples(a1_, a2_);

  ElementSet placed;
  for (Element x : a1_) {
    if (!placed.contains(x)) {
      order_.push_back(x);
      placed.insert(x);
    }
  }
  for (std::size_t j = 0; j < a1_.size(); ++j) {
    const Tuple prefix(a1_.begin(), a1_.begin() + static_cast<std::ptrdiff_t>(j + 1));
    for (Element local : closure(k, m1_.structure, ElementSet::of(to_m1(prefix)))) {
      const Element x = m1_.embedding[local];
      if (!placed.contains(x)) {
        order_.push_back(x);
        placed.insert(x);
      }
    }
  }
  for (Element x : m1_set_.minus(placed)) order_.push_back(x);
}

Tuple GluingProblem::to_m1(std::span<const Element> xs) const {
  Tuple out;
  for (Element x : xs) {
    auto l = m1_.local(x);
    if (!l) fail(ErrorCode::kPrecondition, std::to_string(x) + " is outside M1");
    out.push_back(*l);
  }
  return out;
}

Tuple GluingProblem::to_m2(std::span<const Element> xs) const {
  Tuple out;
  for (Element x : xs) {
    auto l = m2_.local(x);
    if (!l) fail(ErrorCode::kPrecondition, std::to_string(x) + " is outside M2");
    out.push_back(*l);
  }
  return out;
}

bool GluingProblem::types_match(std::span<const Element> src, std::span<const Element> dst) const {
  return type_equal(*k_, TypeLocator(m1_.structure, {}, to_m1(src)),
                    TypeLocator(m2_.structure, {}, to_m2(dst)));
}

bool GluingProblem::in_p(ElementSet b) const {
  if (!b.is_subset_of(m1_set_)) return false;
  const ElementSet base = b & ElementSet::of(a1_);
  ElementSet cl;
  for (Element local : closure(*k_, m1_.structure, ElementSet::of(to_m1(base.elements())))) {
    cl.insert(m1_.embedding[local]);
  }
  return b.is_subset_of(cl);
}

RestrictionVerdict check_finite_restrictions(const GluingProblem& problem,
                                             std::size_t max_window) {
  RestrictionVerdict verdict;
  const AecClass& k = problem.cls();
  for_each_subset_by_size(ElementSet::full(problem.a1().size()), [&](ElementSet positions) {
    if (positions.size() > max_window) return false;
    const TypeLocator left(problem.n1(), {}, restrict_tuple(problem.a1(), positions));
    const TypeLocator right(problem.n2(), {}, restrict_tuple(problem.a2(), positions));
    if (!type_equal(k, left, right)) {
      verdict.pass = false;
      for (Element i : positions) verdict.counterexample.push_back(i);
      return false;
    }
    return true;
  });
  return verdict;
}

namespace {

/// The image ā2 forces on each element of ran ā1 (kConflict when ā1 repeats
/// an entry that ā2 does not).
std::vector<Element> forced_images(const GluingProblem& problem) {
  std::vector<Element> forced(problem.n1().size(), kUnset);
  for (std::size_t i = 0; i < problem.a1().size(); ++i) {
    Element& slot = forced[problem.a1()[i]];
    if (slot == kUnset) {
      slot = problem.a2()[i];
    } else if (slot != problem.a2()[i]) {
      slot = kConflict;
    }
  }
  return forced;
}

}  // namespace

MappingFamily mapping_family(const GluingProblem& problem, ElementSet b, std::size_t budget) {
  if (!problem.in_p(b)) {
    fail(ErrorCode::kNotInP, b.to_string() + " is not contained in the closure of its "
                                             "intersection with the tuple's range");
  }
  const auto forced = forced_images(problem);
  Tuple domain;
  for (Element x : b) {
    if (forced[x] != kUnset) domain.push_back(x);
  }
  for (Element x : b) {
    if (forced[x] == kUnset) domain.push_back(x);
  }
  const std::vector<Element> targets = problem.m2_set().elements();

  MappingFamily family{b, {}};
  Tuple image;
  ElementSet used;
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == domain.size()) {
      std::vector<PartialMap::Pair> pairs;
      for (std::size_t i = 0; i < domain.size(); ++i) pairs.emplace_back(domain[i], image[i]);
      family.maps.emplace_back(std::move(pairs));
      if (family.maps.size() > budget) {
        fail(ErrorCode::kBudgetExceeded, "mapping family over " + b.to_string() +
                                             " exceeds " + std::to_string(budget) + " maps");
      }
      return;
    }
    const Element x = domain[depth];
    std::vector<Element> options;
    if (forced[x] == kConflict) return;
    if (forced[x] != kUnset) {
      options.push_back(forced[x]);
    } else {
      options = targets;
    }
    for (Element y : options) {
      if (used.contains(y) || !problem.m2_set().contains(y)) continue;
      image.push_back(y);
      // Types of sub-enumerations are determined by the full type, so a
      // mismatch on the prefix rules out every extension.
      const std::span<const Element> src(domain.data(), depth + 1);
      if (problem.types_match(src, image)) {
        used.insert(y);
        extend(depth + 1);
        used.erase(y);
      }
      image.pop_back();
    }
  };
  extend(0);
  std::sort(family.maps.begin(), family.maps.end());
  return family;
}

GlueResult glue(const GluingProblem& problem, const GlueOptions& options) {
  const auto forced = forced_images(problem);
  const auto& order = problem.stage_order();
  const std::vector<Element> targets = problem.m2_set().elements();
  GlueResult result;
  result.profile.assign(order.size(), 0);
  Tuple image;
  ElementSet used;
  std::size_t nodes = 0;
  bool stop = false;

  auto record = [&] {
    std::vector<PartialMap::Pair> pairs;
    for (std::size_t i = 0; i < order.size(); ++i) pairs.emplace_back(order[i], image[i]);
    PartialMap lifted(std::move(pairs));
    PartialMap local = PartialMap::from_images([&] {
      std::vector<Element> imgs(problem.m1().structure.size());
      for (const auto& [x, y] : lifted.pairs()) imgs[*problem.m1().local(x)] = *problem.m2().local(y);
      return imgs;
    }());
    const bool sends_tuple = lifted.apply(problem.a1()) == problem.a2();
    if (!sends_tuple || !is_isomorphism(problem.m1().structure, problem.m2().structure, local)) {
      fail(ErrorCode::kInternalContradiction, "gluing produced " + lifted.to_string() +
                                                  ", which is not an isomorphism");
    }
    result.maps.push_back(std::move(lifted));
    if (!options.all_solutions) stop = true;
  };

  std::function<void(std::size_t)> stage = [&](std::size_t k) {
    if (k == order.size()) {
      record();
      return;
    }
    const Element x = order[k];
    if (forced[x] == kConflict) return;
    std::vector<Element> candidates;
    if (forced[x] != kUnset) {
      candidates.push_back(forced[x]);
    } else {
      candidates = targets;
    }
    for (Element y : candidates) {
      if (stop) return;
      if (used.contains(y) || !problem.m2_set().contains(y)) continue;
      image.push_back(y);
      const std::span<const Element> src(order.data(), k + 1);
      if (problem.types_match(src, image)) {
        if (++nodes > options.node_budget) {
          fail(ErrorCode::kBudgetExceeded,
               "gluing search exceeded " + std::to_string(options.node_budget) + " nodes");
        }
        ++result.profile[k];
        result.max_stage = std::max(result.max_stage, k + 1);
        used.insert(y);
        stage(k + 1);
        used.erase(y);
      }
      image.pop_back();
    }
  };
  stage(0);

  result.success = !result.maps.empty();
  if (!result.success) {
    for (std::size_t i = 0; i <= result.max_stage && i < order.size(); ++i) {
      result.failing_domain.insert(order[i]);
    }
    auto verdict = check_finite_restrictions(problem, problem.a1().size());
    if (!verdict.pass) result.counterexample = verdict.counterexample;
  }
  return result;
}

GrowthOracle stage_prefix_oracle(const GluingProblem& problem) {
  const std::vector<Element> order = problem.stage_order();
  return [order](std::size_t level) -> std::optional<ElementSet> {
    if (level > order.size()) return std::nullopt;
    return ElementSet::of(std::span<const Element>(order.data(), level));
  };
}

std::vector<StreamLevel> glue_staged_stream(const GluingProblem& problem,
                                            const GrowthOracle& oracle, std::size_t depth) {
  std::vector<StreamLevel> levels;
  std::vector<MappingFamily> families;
  for (std::size_t k = 0; k <= depth; ++k) {
    auto b = oracle(k);
    if (!b) break;
    if (!levels.empty() && !levels.back().domain.is_subset_of(*b)) {
      fail(ErrorCode::kNotInP, "growth chain is not increasing at level " + std::to_string(k));
    }
    families.push_back(mapping_family(problem, *b));
    levels.push_back({*b, families.back().maps.size(), 0});
  }
  if (levels.empty()) return levels;
  std::vector<PartialMap> survivors = families.back().maps;
  levels.back().survivors = survivors.size();
  for (std::size_t k = levels.size() - 1; k-- > 0;) {
    std::set<PartialMap> restricted;
    for (const auto& g : survivors) restricted.insert(g.restricted_to(levels[k].domain));
    std::vector<PartialMap> next;
    for (const auto& f : families[k].maps) {
      if (restricted.count(f)) next.push_back(f);
    }
    survivors = std::move(next);
    levels[k].survivors = survivors.size();
  }
  return levels;
}

}  // namespace muaec
