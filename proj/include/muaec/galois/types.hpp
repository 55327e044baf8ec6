#pragma once

#include <string>
#include <vector>

#include "muaec/aec/aec_class.hpp"
#include "muaec/aec/audit.hpp"

namespace muaec {

/// gtp(tuple / params; structure). The structure is borrowed.
struct TypeLocator {
  TypeLocator(const FiniteStructure& n, ElementSet a, Tuple b)
      : structure(&n), params(a), tuple(std::move(b)) {}

  const FiniteStructure* structure;
  ElementSet params;
  Tuple tuple;
};

/// Canonical representative of a Galois type: the closure cl(A b̄) relabelled
/// canonically, with A marked by its original labels and b̄ by positions.
struct TypeCertificate {
  /// The pointed closure in canonical labels.
  FiniteStructure structure;
  /// Canonical positions of the parameters, in increasing original label.
  std::vector<Element> params;
  /// The original labels of the parameters.
  ElementSet param_labels;
  /// Canonical positions of the tuple entries.
  Tuple tuple;
  /// Stable text: vocabulary, canonical tables, markings.
  std::string code;

  friend bool operator==(const TypeCertificate& a, const TypeCertificate& b) {
    return a.code == b.code;
  }
  friend bool operator<(const TypeCertificate& a, const TypeCertificate& b) {
    return a.code < b.code;
  }
};

/// Is there an isomorphism cl(A b̄1) -> cl(A b̄2) fixing A and sending b̄1 to
/// b̄2? Throws kParameterMismatch when the two parameter sets differ.
bool type_equal(const AecClass& k, const TypeLocator& t1, const TypeLocator& t2);

TypeCertificate canonical_certificate(const AecClass& k, const TypeLocator& t);

/// All tuples of `n` whose type over A has certificate `cert`, in
/// lexicographic order. When the certificate's tuple lies in the closure of
/// its parameters, only tuples inside cl^N(A) are tried.
std::vector<Tuple> realizations(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                const TypeCertificate& cert);

/// Fewer than eta realizations of gtp(b̄/A; N) inside cl^N(A). Throws
/// kOutOfClosure when b̄ is not inside cl^N(A).
bool is_eta_algebraic(const AecClass& k, const TypeLocator& t, std::size_t eta);

struct AlgebraicityViolation {
  std::size_t structure = 0;
  ElementSet params;
  Element element = 0;
  std::size_t count = 0;
};

struct MultiuniversalReport {
  std::size_t eta = 0;
  std::size_t instances = 0;  // (M, A, b) triples
  std::size_t max_count = 0;  // largest realization count seen
  std::vector<AlgebraicityViolation> violations;  // count >= eta

  bool passed() const { return violations.empty(); }
};

/// For every audited (M, A) and b ∈ cl^M(A), counts realizations of
/// gtp(b/A; M) inside cl^M(A).
MultiuniversalReport audit_multiuniversal(const AecClass& k,
                                          std::span<const FiniteStructure> corpus,
                                          std::size_t eta, const AuditConfig& config = {});

struct StabilizerOrbit {
  /// Every automorphism of cl^N(A) fixing A pointwise, in N's labels.
  std::vector<PartialMap> group;
  ElementSet orbit;
};

/// Throws kOutOfClosure when b is not inside cl^N(A).
StabilizerOrbit stabilizer_orbit(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                 Element b);

}  // namespace muaec
