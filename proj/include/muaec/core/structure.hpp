#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "muaec/core/element_set.hpp"
#include "muaec/core/vocabulary.hpp"

namespace muaec {

/// A finite structure with universe {0, ..., size-1}. Relations are stored as
/// dense indicator tables (row-major, first argument most significant) so the
/// sorted tuple list is just the set bits in index order; functions are total
/// tables in the same indexing. Immutable once built.
class FiniteStructure {
 public:
  /// The empty structure over `vocab` (requires no constants).
  explicit FiniteStructure(VocabularyPtr vocab);

  const Vocabulary& vocab() const { return *vocab_; }
  const VocabularyPtr& vocab_ptr() const { return vocab_; }
  std::size_t size() const { return size_; }
  ElementSet universe() const { return ElementSet::full(size_); }

  std::size_t relation_count() const { return relations_.size(); }
  std::size_t function_count() const { return functions_.size(); }

  bool holds(std::size_t relation, std::span<const Element> args) const;
  bool holds(std::string_view relation, std::span<const Element> args) const;
  /// Sorted tuples of a relation.
  const std::vector<Tuple>& tuples(std::size_t relation) const { return relations_[relation].tuples; }
  const std::vector<Tuple>& tuples(std::string_view relation) const;
  const std::vector<std::uint8_t>& indicator(std::size_t relation) const {
    return relations_[relation].dense;
  }

  Element apply(std::size_t function, std::span<const Element> args) const;
  Element apply(std::string_view function, std::span<const Element> args) const;
  /// Total value table of a function, indexed like `table_index`.
  const std::vector<Element>& function_table(std::size_t function) const {
    return functions_[function];
  }

  std::size_t table_index(std::span<const Element> args) const;
  /// Inverse of table_index for a given arity.
  Tuple table_args(std::size_t index, std::size_t arity) const;

  std::size_t hash() const;
  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);

  std::string debug_string() const;

 private:
  friend class StructureBuilder;
  FiniteStructure(VocabularyPtr vocab, std::size_t size,
                  const std::vector<std::vector<std::uint8_t>>& relations,
                  std::vector<std::vector<Element>> functions);

  struct RelationTable {
    std::vector<std::uint8_t> dense;
    std::vector<Tuple> tuples;
  };

  VocabularyPtr vocab_;
  std::size_t size_ = 0;
  std::vector<RelationTable> relations_;
  std::vector<std::vector<Element>> functions_;
};

class StructureBuilder {
 public:
  StructureBuilder(VocabularyPtr vocab, std::size_t size);
  /// Starts from a copy of an existing structure's tables (same size).
  explicit StructureBuilder(const FiniteStructure& base);

  StructureBuilder& add(std::size_t relation, std::span<const Element> args);
  StructureBuilder& add(std::string_view relation, std::initializer_list<Element> args);
  StructureBuilder& add(std::string_view relation, std::span<const Element> args);
  StructureBuilder& remove(std::size_t relation, std::span<const Element> args);
  StructureBuilder& set(std::size_t function, std::span<const Element> args, Element value);
  StructureBuilder& set(std::string_view function, std::initializer_list<Element> args,
                        Element value);
  /// Replaces a whole function table (indexed like FiniteStructure::table_index).
  StructureBuilder& set_table(std::size_t function, std::vector<Element> values);

  std::size_t size() const { return size_; }
  const Vocabulary& vocab() const { return *vocab_; }

  /// Throws kInvalidArgument when a function table is not total.
  FiniteStructure build() const;

 private:
  static constexpr Element kUnset = ~Element{0};
  std::size_t index(std::span<const Element> args) const;

  VocabularyPtr vocab_;
  std::size_t size_;
  std::vector<std::vector<std::uint8_t>> relations_;
  std::vector<std::vector<Element>> functions_;
};

/// Number of entries of a table of the given arity over n elements; throws
/// kBudgetExceeded past 2^22.
std::size_t table_size(std::size_t n, std::size_t arity);

/// Smallest superset of `seed` closed under every function (the generated
/// substructure's universe); includes all constants.
ElementSet function_closure(const FiniteStructure& s, ElementSet seed);

struct Induced {
  FiniteStructure structure;
  /// embedding[i] = element of the parent that sub-element i came from;
  /// increasing, so the relabeling is order-preserving.
  std::vector<Element> embedding;

  /// Parent element -> sub element, or nullopt outside the subset.
  std::optional<Element> local(Element parent) const;
};

/// The structure induced on `subset`, or nullopt when `subset` is not closed
/// under the functions.
std::optional<Induced> induced_substructure(const FiniteStructure& s, ElementSet subset);

/// Relabels by `perm` (perm[old] = new), which must be a permutation.
FiniteStructure relabel(const FiniteStructure& s, std::span<const Element> perm);

/// Forgets every symbol not in `smaller`, which must list a prefix-compatible
/// subset of the symbols by name.
FiniteStructure reduct(const FiniteStructure& s, const VocabularyPtr& smaller);

/// Disjoint union of relational structures (second copy shifted by a.size()).
FiniteStructure disjoint_union(const FiniteStructure& a, const FiniteStructure& b);

}  // namespace muaec

template <>
struct std::hash<muaec::FiniteStructure> {
  std::size_t operator()(const muaec::FiniteStructure& s) const { return s.hash(); }
};
