#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "muaec/aec/aec_class.hpp"

namespace muaec {

using Generator = std::function<FiniteStructure(std::size_t size, std::uint64_t seed)>;
using CorpusBuilder = std::function<std::vector<FiniteStructure>(std::size_t max_size)>;

struct CatalogEntry {
  AecClassPtr cls;
  /// Claimed bound: every type of an element of cl(A) over A has fewer than
  /// this many realizations. Absent when no uniform bound is claimed.
  std::optional<std::size_t> expected_eta;
  /// A member of the given size drawn from `seed`; throws kInvalidArgument
  /// when the class has no member of that size.
  Generator generator;
  /// One member per isomorphism class, for every size up to max_size.
  CorpusBuilder exhaustive;
  std::size_t exhaustive_bound = 0;
  /// Where the class comes from and how it was made finite.
  std::string provenance;
  /// For negative controls: the audit this entry exists to fail
  /// ("intersections" or "transport"); empty for positive entries.
  std::string designated_failure;
  /// A documented (N, A) or embedding on which the designated audit fails.
  std::string documented_witness;

  bool negative_control() const { return !designated_failure.empty(); }
  const std::string& name() const { return cls->name; }
};

// Class definitions.
AecClassPtr make_unary_successor_class();          // US1
AecClassPtr make_component_graph_class();          // CG
AecClassPtr make_fixed_block_class(std::size_t k);  // EQk
AecClassPtr make_partition_code_class(std::size_t m_max);  // PCm
AecClassPtr make_bounded_orbit_class(std::size_t bound);   // LFb
AecClassPtr make_no_intersection_class();          // NOINT
AecClassPtr make_mixed_block_class(std::size_t k);  // EQMIXk

std::vector<CatalogEntry> register_builtin_catalog();
std::vector<CatalogEntry> adversarial_variants();
/// Builtin entries followed by the adversarial ones.
std::vector<CatalogEntry> full_catalog();
/// Throws kInvalidArgument for an unknown name.
CatalogEntry find_catalog_entry(const std::string& name);

/// Keeps the first structure of each isomorphism class, preserving order.
std::vector<FiniteStructure> dedup_isomorphic(std::vector<FiniteStructure> structures);

// Isomorph-free corpora shared by several entries.
std::vector<FiniteStructure> all_graphs(std::size_t max_size);
std::vector<FiniteStructure> all_unary_functions(std::size_t max_size);

/// Size of one family of a PCm member: one coded set of each size 1..m_max.
std::size_t partition_code_family_size(std::size_t m_max);

}  // namespace muaec
