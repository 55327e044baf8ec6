#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace muaec {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// A subset of a universe {0, ..., n-1} with n <= 64, stored as a bitmask so
/// that the canonical sorted order is the iteration order.
class ElementSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<Element> elements);

  template <typename Range>
  static ElementSet of(const Range& elements) {
    ElementSet s;
    for (auto e : elements) s.insert(static_cast<Element>(e));
    return s;
  }

  /// {0, ..., n-1}.
  static ElementSet full(std::size_t n);

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(Element e) const { return e < kCapacity && ((bits_ >> e) & 1U) != 0; }
  void insert(Element e);
  void erase(Element e) { bits_ &= ~(std::uint64_t{1} << e); }

  bool is_subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool within_universe(std::size_t n) const { return is_subset_of(full(n)); }

  ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  ElementSet minus(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }
  ElementSet& operator|=(ElementSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  ElementSet& operator&=(ElementSet o) {
    bits_ &= o.bits_;
    return *this;
  }

  friend bool operator==(ElementSet, ElementSet) = default;
  /// Size first, then lexicographic on the sorted element lists.
  static bool size_lex_less(ElementSet a, ElementSet b);

  std::vector<Element> elements() const;
  std::string to_string() const;

  class iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    Element operator*() const { return static_cast<Element>(std::countr_zero(rest_)); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t rest_ = 0;
  };
  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

 private:
  std::uint64_t bits_ = 0;
};

/// Calls fn(S) for every S with base ⊆ S ⊆ universe, in increasing size and
/// then lexicographic order. fn returns false to stop early.
template <typename Fn>
void for_each_superset(ElementSet base, ElementSet universe, Fn&& fn);

/// Calls fn(S) for every subset S of `set`, ordered by size then lexicographically.
template <typename Fn>
void for_each_subset_by_size(ElementSet set, Fn&& fn);

/// All subsets of {0..n-1} in size-then-lex order.
std::vector<ElementSet> subsets_by_size(ElementSet set);

}  // namespace muaec

#include "muaec/core/element_set_inl.hpp"
