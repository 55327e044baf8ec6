#include "refinement.hpp"

#include <algorithm>
#include <unordered_set>

namespace muaec::detail {

Refiner::Refiner(std::span<const FiniteStructure* const> structures) {
  std::size_t total = 0;
  for (const auto* s : structures) total += s->size();
  incidences_.resize(total);

  std::uint32_t offset = 0;
  for (const auto* s : structures) {
    const std::size_t nrel = s->relation_count();
    for (std::size_t r = 0; r < nrel; ++r) {
      for (const Tuple& t : s->tuples(r)) {
        Row row{static_cast<std::uint32_t>(r), {}};
        for (Element e : t) row.vertices.push_back(offset + e);
        rows_.push_back(std::move(row));
      }
    }
    for (std::size_t f = 0; f < s->function_count(); ++f) {
      const std::size_t arity = s->vocab().functions()[f].arity;
      const auto& table = s->function_table(f);
      if (s->size() == 0) continue;
      for (std::size_t i = 0; i < table.size(); ++i) {
        Row row{static_cast<std::uint32_t>(nrel + f), {}};
        for (Element e : s->table_args(i, arity)) row.vertices.push_back(offset + e);
        row.vertices.push_back(offset + table[i]);
        rows_.push_back(std::move(row));
      }
    }
    offset += static_cast<std::uint32_t>(s->size());
  }
  for (std::uint32_t r = 0; r < rows_.size(); ++r) {
    const auto& vs = rows_[r].vertices;
    for (std::uint32_t p = 0; p < vs.size(); ++p) incidences_[vs[p]].push_back({r, p});
  }
}

std::size_t count_cells(const std::vector<std::uint32_t>& colors) {
  if (colors.empty()) return 0;
  return *std::max_element(colors.begin(), colors.end()) + 1;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h *= 0xBF58476D1CE4E5B9ULL;
  return h ^ (h >> 31);
}

}  // namespace

void Refiner::refine(std::vector<std::uint32_t>& colors) const {
  const std::size_t n = incidences_.size();
  std::size_t cells = count_cells(colors);
  struct Signature {
    std::uint32_t color;
    std::vector<std::uint64_t> entries;
    bool operator<(const Signature& o) const {
      if (color != o.color) return color < o.color;
      return entries < o.entries;
    }
  };
  std::vector<Signature> sigs(n);
  while (cells < n) {
    for (std::uint32_t v = 0; v < n; ++v) {
      auto& sig = sigs[v];
      sig.color = colors[v];
      sig.entries.clear();
      for (const Incidence& inc : incidences_[v]) {
        const Row& row = rows_[inc.row];
        std::uint64_t h = mix(row.symbol + 1, inc.position + 1);
        for (std::uint32_t u : row.vertices) h = mix(h, colors[u] + 1);
        sig.entries.push_back(h);
      }
      std::sort(sig.entries.begin(), sig.entries.end());
    }
    colors = rank_keys(sigs);
    const std::size_t next = count_cells(colors);
    if (next == cells) break;
    cells = next;
  }
}

}  // namespace muaec::detail
