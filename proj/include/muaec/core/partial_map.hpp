#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "muaec/core/element_set.hpp"
#include "muaec/core/structure.hpp"

namespace muaec {

/// A finite injective partial function between two universes, kept sorted by
/// source element.
class PartialMap {
 public:
  using Pair = std::pair<Element, Element>;

  PartialMap() = default;
  /// Throws kInvalidArgument unless the pairs are functional and injective.
  explicit PartialMap(std::vector<Pair> pairs);

  static PartialMap identity(ElementSet domain);
  /// Total map i -> images[i].
  static PartialMap from_images(std::span<const Element> images);
  /// Position-wise map from[i] -> to[i]; nullopt when that is not a
  /// well-defined injective map.
  static std::optional<PartialMap> from_tuples(std::span<const Element> from,
                                               std::span<const Element> to);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  std::optional<Element> operator()(Element x) const;
  /// Throws kPrecondition when x is outside the domain.
  Element at(Element x) const;
  Tuple apply(std::span<const Element> xs) const;

  ElementSet domain() const;
  ElementSet range() const;
  bool is_total_on(std::size_t n) const { return domain() == ElementSet::full(n); }

  /// (this ∘ inner)(x) = this(inner(x)), defined where both are.
  PartialMap after(const PartialMap& inner) const;
  PartialMap inverse() const;
  PartialMap restricted_to(ElementSet domain) const;
  bool extends(const PartialMap& smaller) const;
  /// Union with a compatible map; nullopt on conflict.
  std::optional<PartialMap> merged(const PartialMap& other) const;

  std::string to_string() const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;
  friend auto operator<=>(const PartialMap&, const PartialMap&) = default;

 private:
  std::vector<Pair> pairs_;
};

/// Both directions of relation preservation on the image and commutation with
/// every function; `f` must be total on `small`.
bool is_isomorphism(const FiniteStructure& a, const FiniteStructure& b, const PartialMap& f);

/// small ⊆ big along `inclusion`: injective, total on small, relations
/// preserved in both directions on the image, functions commute. Throws
/// kVocabularyMismatch on distinct signatures.
bool is_substructure(const FiniteStructure& small, const FiniteStructure& big,
                     const PartialMap& inclusion);

}  // namespace muaec
