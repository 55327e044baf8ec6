#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "muaec/aec/aec_class.hpp"

namespace muaec {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED5EEDULL;

struct AuditConfig {
  /// Structures up to this size get every subset audited; larger ones get
  /// `samples` random subsets drawn from `seed`.
  std::size_t exhaustive_bound = 7;
  std::size_t samples = 256;
  std::uint64_t seed = kDefaultSeed;
  /// Worker threads (0 = hardware concurrency).
  std::size_t jobs = 1;
};

struct Violation {
  std::size_t structure = 0;  // index into the corpus
  ElementSet subset;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AuditReport {
  std::string check;
  std::size_t instances = 0;  // (structure, subset) pairs examined
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

/// The subsets an audit visits on structure `index`: all of them (size, then
/// lexicographic) up to the exhaustive bound, else a seeded sample that
/// depends only on (seed, index).
std::vector<ElementSet> audited_subsets(const FiniteStructure& n, std::size_t index,
                                        const AuditConfig& config);

/// cl^N(A) must be a member and strong in N for every audited (N, A).
AuditReport audit_intersections(const AecClass& k, std::span<const FiniteStructure> corpus,
                                const AuditConfig& config = {});

/// Membership of the corpus, reflexivity of strong_sub, and transitivity
/// through intermediate strong subsets (structures up to the exhaustive bound).
AuditReport audit_class_contract(const AecClass& k, std::span<const FiniteStructure> corpus,
                                 const AuditConfig& config = {});

/// fast_closure agrees with the generic closure on every audited subset.
/// Passes trivially when the class has no override.
AuditReport audit_fast_closure(const AecClass& k, std::span<const FiniteStructure> corpus,
                               const AuditConfig& config = {});

/// For every strong S ⊆ N and audited A ⊆ S: the closure of A computed in the
/// induced S equals cl^N(A). Violations are reported in N's labels.
AuditReport audit_transport(const AecClass& k, std::span<const FiniteStructure> corpus,
                            const AuditConfig& config = {});

}  // namespace muaec
