#pragma once

// Colour refinement over one or more structures at once. Vertices of the
// i-th structure are numbered after those of structures 0..i-1, so refining a
// pair jointly yields colours that are comparable across the two sides.

#include <cstdint>
#include <span>
#include <vector>

#include "muaec/core/structure.hpp"

namespace muaec::detail {

struct Row {
  std::uint32_t symbol;  // relations first, then functions
  std::vector<std::uint32_t> vertices;  // global ids; for functions args then value
};

struct Incidence {
  std::uint32_t row;
  std::uint32_t position;
};

class Refiner {
 public:
  explicit Refiner(std::span<const FiniteStructure* const> structures);

  std::size_t vertex_count() const { return incidences_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Incidence>& incidences(std::uint32_t v) const { return incidences_[v]; }

  /// Replaces `colors` by the coarsest stable refinement. Colours are dense
  /// ranks whose order depends only on colours and tables, never on labels.
  void refine(std::vector<std::uint32_t>& colors) const;

 private:
  std::vector<Row> rows_;
  std::vector<std::vector<Incidence>> incidences_;
};

/// Dense ranks of arbitrary sortable keys.
template <typename Key>
std::vector<std::uint32_t> rank_keys(const std::vector<Key>& keys);

std::size_t count_cells(const std::vector<std::uint32_t>& colors);

}  // namespace muaec::detail

#include <algorithm>
#include <numeric>

namespace muaec::detail {

template <typename Key>
std::vector<std::uint32_t> rank_keys(const std::vector<Key>& keys) {
  std::vector<std::uint32_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  std::vector<std::uint32_t> rank(keys.size());
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && keys[order[i - 1]] < keys[order[i]]) ++r;
    rank[order[i]] = r;
  }
  return rank;
}

}  // namespace muaec::detail
