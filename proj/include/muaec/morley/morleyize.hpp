#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "muaec/aec/aec_class.hpp"
#include "muaec/galois/types.hpp"

namespace muaec {

struct TypeCatalogEntry {
  /// Fresh relation name, "gt<arity>_<index>".
  std::string symbol;
  std::size_t arity = 0;
  /// A type over ∅ realized somewhere in the corpus.
  TypeCertificate certificate;
};

/// The types over ∅ of arity 1..max_arity realized in a corpus, one relation
/// symbol each. Entries are ordered by arity, then certificate code.
class TypeCatalog {
 public:
  /// Throws kNotAMember when a corpus structure is outside K.
  static TypeCatalog build(AecClassPtr k, std::vector<FiniteStructure> corpus,
                           std::size_t max_arity, std::size_t jobs = 1);

  const AecClassPtr& base() const { return base_; }
  std::size_t max_arity() const { return max_arity_; }
  const std::vector<FiniteStructure>& corpus() const { return corpus_; }
  const std::vector<TypeCatalogEntry>& entries() const { return entries_; }
  const VocabularyPtr& expanded_vocab() const { return expanded_; }

  std::optional<std::size_t> find(const std::string& code) const;

  /// m with every gt symbol holding of exactly its realizations. Throws
  /// kIncompleteCatalog naming the first tuple whose type has no entry.
  FiniteStructure expand(const FiniteStructure& m) const;
  std::optional<FiniteStructure> try_expand(const FiniteStructure& m) const;

 private:
  AecClassPtr base_;
  std::size_t max_arity_ = 0;
  std::vector<FiniteStructure> corpus_;
  std::vector<TypeCatalogEntry> entries_;
  std::map<std::string, std::size_t> by_code_;
  VocabularyPtr expanded_;
};

struct Morleyization {
  /// Members: structures whose base reduct is in K and whose gt relations
  /// are exactly the catalog expansion. Strong substructure and closure are
  /// those of the reducts.
  AecClassPtr cls;
  TypeCatalog catalog;
  /// expand() of every corpus structure, in corpus order.
  std::vector<FiniteStructure> expanded;
};

Morleyization morleyize(const TypeCatalog& catalog);

/// Quantifier-free type of b̄ over A: the substructure generated by A ∪ b̄
/// with A marked by label and b̄ by position, in canonical form.
struct QfType {
  std::size_t variables = 0;
  FiniteStructure diagram;
  std::string code;

  friend bool operator==(const QfType& a, const QfType& b) { return a.code == b.code; }
};

QfType qf_type(const FiniteStructure& m, ElementSet a, std::span<const Element> b);

struct QfGaloisMismatch {
  std::size_t structure1 = 0, structure2 = 0;
  ElementSet params;
  Tuple tuple1, tuple2;
  bool qf_equal = false;
  bool galois_equal = false;
};

struct QfGaloisReport {
  std::size_t pairs = 0;
  std::vector<QfGaloisMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Over every pair of locators (M, A, b̄), (M', A, b̄') in the corpus with
/// 1 <= |b̄| = |b̄'| <= max_tuple: qf_type equal iff type_equal.
QfGaloisReport check_qf_equals_galois(const AecClass& k, std::span<const FiniteStructure> corpus,
                                      std::size_t max_tuple, std::size_t jobs = 1);

struct ModelCompletenessMismatch {
  std::size_t structure = 0;
  ElementSet subset;
};

struct ModelCompletenessReport {
  std::size_t pairs = 0;
  std::vector<ModelCompletenessMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// For every N in the corpus and every S ⊆ N whose induced substructure is a
/// member: the substructure is strong in N.
ModelCompletenessReport check_model_complete(const AecClass& k,
                                             std::span<const FiniteStructure> corpus,
                                             std::size_t jobs = 1);

}  // namespace muaec
