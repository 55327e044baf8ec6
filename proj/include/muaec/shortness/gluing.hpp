#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "muaec/aec/aec_class.hpp"

namespace muaec {

/// Two tuples ā1 in N1 and ā2 in N2 of equal length, with M_l = cl^{N_l}(ā_l)
/// and the base map f0 : ā1(i) -> ā2(i). All maps handed in or out use the
/// labels of N1 and N2. The structures are borrowed.
class GluingProblem {
 public:
  /// Throws kInvalidArgument when the tuples differ in length or leave the
  /// universes.
  GluingProblem(const AecClass& k, const FiniteStructure& n1, Tuple a1, const FiniteStructure& n2,
                Tuple a2);

  const AecClass& cls() const { return *k_; }
  const FiniteStructure& n1() const { return *n1_; }
  const FiniteStructure& n2() const { return *n2_; }
  const Tuple& a1() const { return a1_; }
  const Tuple& a2() const { return a2_; }
  const Induced& m1() const { return m1_; }
  const Induced& m2() const { return m2_; }
  ElementSet m1_set() const { return m1_set_; }
  ElementSet m2_set() const { return m2_set_; }
  /// f0, or nullopt when ā1(i) = ā1(j) but ā2(i) != ā2(j) or vice versa.
  const std::optional<PartialMap>& base_map() const { return f0_; }

  /// Elements of M1: ran(ā1) in order of first occurrence, then the rest by
  /// the shortest prefix of ā1 whose closure contains them, then by label.
  const std::vector<Element>& stage_order() const { return order_; }

  /// gtp(src / ∅; M1) == gtp(dst / ∅; M2) for tuples in N labels.
  bool types_match(std::span<const Element> src, std::span<const Element> dst) const;

  /// B ⊆ M1 and B ⊆ cl^{M1}(B ∩ ran ā1).
  bool in_p(ElementSet b) const;

  // Label conversions between N_l and the induced closure M_l.
  Tuple to_m1(std::span<const Element> xs) const;
  Tuple to_m2(std::span<const Element> xs) const;

 private:
  const AecClass* k_;
  const FiniteStructure* n1_;
  const FiniteStructure* n2_;
  Tuple a1_, a2_;
  ElementSet m1_set_, m2_set_;
  Induced m1_, m2_;
  std::optional<PartialMap> f0_;
  std::vector<Element> order_;
};

struct RestrictionVerdict {
  bool pass = true;
  /// First failing index set I (size, then lexicographic), when !pass.
  std::vector<std::size_t> counterexample;
};

/// gtp(ā1↾I / ∅; N1) == gtp(ā2↾I / ∅; N2) for every I with |I| <= max_window.
RestrictionVerdict check_finite_restrictions(const GluingProblem& problem,
                                             std::size_t max_window);

struct MappingFamily {
  ElementSet domain;
  std::vector<PartialMap> maps;  // sorted
};

/// Every injection B -> M2 agreeing with f0 on B ∩ ran ā1 whose enumeration
/// has the same type over ∅ in M2 as B has in M1. Throws kNotInP when B is
/// not in P, kBudgetExceeded when more than `budget` maps qualify.
MappingFamily mapping_family(const GluingProblem& problem, ElementSet b,
                             std::size_t budget = 1u << 20);

struct GlueOptions {
  bool all_solutions = false;
  /// Abort with kBudgetExceeded after this many search nodes.
  std::size_t node_budget = 1u << 24;
};

struct GlueResult {
  bool success = false;
  /// Isomorphisms M1 -> M2 sending ā1 to ā2 (one unless all_solutions).
  std::vector<PartialMap> maps;
  /// profile[k] = search nodes created at stage k (a node fixes c_0..c_k).
  std::vector<std::size_t> profile;
  /// Number of stages completed on the deepest branch.
  std::size_t max_stage = 0;
  /// On failure: the first stage no branch completed, as a set of N1 elements.
  ElementSet failing_domain;
  /// On failure: first index set I whose restricted types differ; empty
  /// optional if every restriction matches.
  std::optional<std::vector<std::size_t>> counterexample;
};

/// Staged depth-first extension along stage_order: stage k extends the
/// current map to c_k by every image that keeps the enumeration's type over
/// ∅ equal. Returned maps are verified isomorphisms (else
/// kInternalContradiction).
GlueResult glue(const GluingProblem& problem, const GlueOptions& options = {});

/// Supplies B_0 ⊆ B_1 ⊆ ...; nullopt ends the chain early.
using GrowthOracle = std::function<std::optional<ElementSet>(std::size_t level)>;

/// B_k = the first k elements of stage_order.
GrowthOracle stage_prefix_oracle(const GluingProblem& problem);

struct StreamLevel {
  ElementSet domain;
  std::size_t family_size = 0;  // |F_{B_k}|
  std::size_t survivors = 0;    // members extendable to the demanded depth
};

/// Levels 0..depth of the chain with backward-pruned survivor counts. Throws
/// kNotInP when the oracle emits a set outside P or a non-increasing chain.
std::vector<StreamLevel> glue_staged_stream(const GluingProblem& problem,
                                            const GrowthOracle& oracle, std::size_t depth);

}  // namespace muaec
