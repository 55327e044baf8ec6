#include "muaec/catalog/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"

namespace muaec {

std::vector<FiniteStructure> dedup_isomorphic(std::vector<FiniteStructure> structures) {
  std::unordered_set<std::string> seen;
  std::vector<FiniteStructure> out;
  for (auto& s : structures) {
    if (seen.insert(s.vocab().signature() + "#" + canonical_form(s).code).second) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

std::vector<Element> shuffled_labels(std::size_t n, std::uint64_t seed) {
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
  return perm;
}

FiniteStructure graph_from_edges(const VocabularyPtr& vocab, std::size_t n,
                                 const std::vector<std::pair<Element, Element>>& edges) {
  StructureBuilder b(vocab, n);
  for (auto [u, v] : edges) {
    const Element uv[] = {u, v}, vu[] = {v, u};
    b.add(0, uv);
    b.add(0, vu);
  }
  return b.build();
}

/// Equivalence relation whose classes are consecutive runs of the given sizes.
FiniteStructure blocks_structure(const VocabularyPtr& vocab, const std::vector<std::size_t>& sizes,
                                 std::span<const Element> labels = {}) {
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  StructureBuilder b(vocab, n);
  Element start = 0;
  for (std::size_t size : sizes) {
    for (Element x = start; x < start + size; ++x) {
      for (Element y = start; y < start + size; ++y) {
        const Element xy[] = {labels.empty() ? x : labels[x], labels.empty() ? y : labels[y]};
        b.add(0, xy);
      }
    }
    start += static_cast<Element>(size);
  }
  return b.build();
}

void partitions_bounded(std::size_t n, std::size_t max_part, std::vector<std::size_t>& current,
                        std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions_bounded(n - p, p, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n, std::size_t max_part) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  partitions_bounded(n, max_part, current, out);
  return out;
}

FiniteStructure partition_code_structure(const AecClass& k, std::size_t m_max,
                                         std::size_t families, std::span<const Element> labels) {
  const std::size_t fam = partition_code_family_size(m_max);
  const std::size_t n = families * fam;
  StructureBuilder b(k.vocab, n);
  auto lab = [&](Element x) { return labels.empty() ? x : labels[x]; };
  Element next = 0;
  for (std::size_t f = 0; f < families; ++f) {
    Element singleton = 0;
    for (std::size_t m = 1; m <= m_max; ++m) {
      const Element set = next++;
      b.add(1, std::vector<Element>{lab(set)});
      for (std::size_t i = 0; i < m; ++i) {
        const Element point = next++;
        b.add(0, std::vector<Element>{lab(point)});
        b.add(2, std::vector<Element>{lab(point), lab(set)});
      }
      if (m == 1) {
        singleton = set;
      } else {
        b.add(3 + (m - 2), std::vector<Element>{lab(singleton), lab(set)});
      }
    }
  }
  return b.build();
}

std::vector<FiniteStructure> filtered(std::vector<FiniteStructure> all, const AecClass& k) {
  std::vector<FiniteStructure> out;
  for (auto& s : all) {
    if (k.member(s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<FiniteStructure> all_graphs(std::size_t max_size) {
  auto vocab = make_vocabulary({{"E", 2}});
  std::vector<FiniteStructure> level = {FiniteStructure(vocab)};
  std::vector<FiniteStructure> out = level;
  for (std::size_t n = 0; n < max_size; ++n) {
    // Every graph on n+1 vertices is a graph on n vertices plus one more.
    std::vector<FiniteStructure> next;
    for (const auto& g : level) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::pair<Element, Element>> edges;
        for (const Tuple& t : g.tuples(0)) {
          if (t[0] < t[1]) edges.emplace_back(t[0], t[1]);
        }
        for (Element u : ElementSet(mask)) edges.emplace_back(u, static_cast<Element>(n));
        next.push_back(graph_from_edges(vocab, n + 1, edges));
      }
    }
    level = dedup_isomorphic(std::move(next));
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<FiniteStructure> all_unary_functions(std::size_t max_size) {
  auto vocab = make_vocabulary({}, {{"s", 1}});
  std::vector<FiniteStructure> level = {FiniteStructure(vocab)};
  std::vector<FiniteStructure> out = level;
  for (std::size_t n = 0; n < max_size; ++n) {
    // A functional graph on n+1 nodes is a permutation or has a node without
    // preimage, whose removal leaves a functional graph on n nodes.
    std::vector<FiniteStructure> next;
    for (const auto& g : level) {
      for (Element target = 0; target <= n; ++target) {
        std::vector<Element> table = g.function_table(0);
        if (n == 0) table.clear();
        table.push_back(target);
        StructureBuilder b(vocab, n + 1);
        b.set_table(0, table);
        next.push_back(b.build());
      }
    }
    for (const auto& cycle_type : partitions(n + 1, n + 1)) {
      std::vector<Element> table;
      Element start = 0;
      for (std::size_t len : cycle_type) {
        for (Element i = 0; i < len; ++i) {
          table.push_back(start + static_cast<Element>((i + 1) % len));
        }
        start += static_cast<Element>(len);
      }
      StructureBuilder b(vocab, n + 1);
      b.set_table(0, table);
      next.push_back(b.build());
    }
    level = dedup_isomorphic(std::move(next));
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<CatalogEntry> register_builtin_catalog() {
  std::vector<CatalogEntry> entries;

  {
    CatalogEntry e;
    e.cls = make_unary_successor_class();
    e.expected_eta = 2;
    e.generator = [vocab = e.cls->vocab](std::size_t n, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      std::vector<Element> table(n);
      for (auto& v : table) v = static_cast<Element>(rng() % n);
      StructureBuilder b(vocab, n);
      b.set_table(0, table);
      return b.build();
    };
    e.exhaustive = all_unary_functions;
    e.exhaustive_bound = 6;
    e.provenance =
        "Universal class with one unary function. Finite scale: every table on n elements.";
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.cls = make_component_graph_class();
    e.generator = [vocab = e.cls->vocab](std::size_t n, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      std::vector<std::pair<Element, Element>> edges;
      for (Element u = 0; u < n; ++u) {
        for (Element v = u + 1; v < n; ++v) {
          if (rng() % 5 < 2) edges.emplace_back(u, v);
        }
      }
      return graph_from_edges(vocab, n, edges);
    };
    e.exhaustive = all_graphs;
    e.exhaustive_bound = 6;
    e.provenance =
        "Locally finite graphs ordered by component-closed induced subgraph. Finite graphs "
        "are trivially locally finite, so the finite members are all finite graphs.";
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    const std::size_t k = 3;
    e.cls = make_fixed_block_class(k);
    e.expected_eta = k;
    e.generator = [vocab = e.cls->vocab, k](std::size_t n, std::uint64_t seed) {
      if (n % k != 0) {
        fail(ErrorCode::kInvalidArgument,
             "EQ" + std::to_string(k) + " has no member of size " + std::to_string(n));
      }
      auto labels = shuffled_labels(n, seed);
      return blocks_structure(vocab, std::vector<std::size_t>(n / k, k), labels);
    };
    e.exhaustive = [vocab = e.cls->vocab, k](std::size_t max_size) {
      std::vector<FiniteStructure> out;
      for (std::size_t n = 0; n <= max_size; n += k) {
        out.push_back(blocks_structure(vocab, std::vector<std::size_t>(n / k, k)));
      }
      return out;
    };
    e.exhaustive_bound = 6;
    e.provenance =
        "Equivalence relations ordered by 'classes do not grow', with classes of exactly 3 "
        "elements instead of countably many.";
    entries.push_back(std::move(e));
  }
  for (std::size_t m_max : {std::size_t{2}, std::size_t{3}}) {
    CatalogEntry e;
    e.cls = make_partition_code_class(m_max);
    e.expected_eta = m_max + 1;
    const std::size_t fam = partition_code_family_size(m_max);
    e.generator = [cls = e.cls, m_max, fam](std::size_t n, std::uint64_t seed) {
      if (n % fam != 0) {
        fail(ErrorCode::kInvalidArgument, cls->name + " members have size divisible by " +
                                              std::to_string(fam));
      }
      auto labels = shuffled_labels(n, seed);
      return partition_code_structure(*cls, m_max, n / fam, labels);
    };
    e.exhaustive = [cls = e.cls, m_max, fam](std::size_t max_size) {
      std::vector<FiniteStructure> out;
      for (std::size_t t = 0; t * fam <= max_size; ++t) {
        out.push_back(partition_code_structure(*cls, m_max, t, {}));
      }
      return out;
    };
    e.exhaustive_bound = 2 * fam <= 10 ? 2 * fam : fam;
    e.provenance = "Partition codes with the bijections Rm kept only for m <= " +
                   std::to_string(m_max) +
                   "; every claim about this class is checked for the truncation only.";
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    const std::size_t bound = 3;
    e.cls = make_bounded_orbit_class(bound);
    e.expected_eta = 2;
    e.generator = [vocab = e.cls->vocab, bound](std::size_t n, std::uint64_t seed) {
      // Cycles of length <= bound, then trees hung so that orbits stay short.
      std::mt19937_64 rng(seed);
      auto order = shuffled_labels(n, seed ^ 0xA5A5A5A5ULL);
      std::vector<Element> table(n);
      std::vector<std::size_t> orbit(n, 0);
      std::size_t i = 0;
      const std::size_t cyclic = n == 0 ? 0 : 1 + rng() % n;
      while (i < cyclic) {
        const std::size_t len = std::min<std::size_t>(1 + rng() % bound, cyclic - i);
        for (std::size_t j = 0; j < len; ++j) {
          table[order[i + j]] = order[i + (j + 1) % len];
          orbit[order[i + j]] = len;
        }
        i += len;
      }
      for (; i < n; ++i) {
        std::vector<Element> targets;
        for (std::size_t j = 0; j < i; ++j) {
          if (orbit[order[j]] < bound) targets.push_back(order[j]);
        }
        const Element x = order[i];
        const Element t = targets[rng() % targets.size()];
        table[x] = t;
        orbit[x] = orbit[t] + 1;
      }
      StructureBuilder b(vocab, n);
      b.set_table(0, table);
      return b.build();
    };
    e.exhaustive = [cls = e.cls](std::size_t max_size) {
      return filtered(all_unary_functions(max_size), *cls);
    };
    e.exhaustive_bound = 6;
    e.provenance =
        "A class with locally finite closure: unary-function structures with forward "
        "orbits of at most 3 elements.";
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<CatalogEntry> adversarial_variants() {
  std::vector<CatalogEntry> entries;
  {
    CatalogEntry e;
    e.cls = make_no_intersection_class();
    e.generator = [vocab = e.cls->vocab](std::size_t n, std::uint64_t seed) {
      if (n < 2) fail(ErrorCode::kInvalidArgument, "NOINT members need two vertices");
      std::mt19937_64 rng(seed);
      auto labels = shuffled_labels(n, seed);
      std::vector<std::pair<Element, Element>> edges = {{labels[0], labels[1]}};
      for (Element u = 0; u < n; ++u) {
        for (Element v = u + 1; v < n; ++v) {
          if (rng() % 3 == 0) edges.emplace_back(u, v);
        }
      }
      return graph_from_edges(vocab, n, edges);
    };
    e.exhaustive = [cls = e.cls](std::size_t max_size) {
      return filtered(all_graphs(max_size), *cls);
    };
    e.exhaustive_bound = 5;
    e.provenance = "Negative control for the intersection audit.";
    e.designated_failure = "intersections";
    e.documented_witness =
        "N = path 0-1-2, A = {1}: the strong subsets containing 1 are {0,1}, {1,2} and "
        "{0,1,2}; their intersection {1} has no edge, so it is not a member";
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    const std::size_t k = 3;
    e.cls = make_mixed_block_class(k);
    e.generator = [vocab = e.cls->vocab, k](std::size_t n, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      std::vector<std::size_t> sizes;
      for (std::size_t left = n; left > 0;) {
        const std::size_t size = std::min<std::size_t>(1 + rng() % k, left);
        sizes.push_back(size);
        left -= size;
      }
      return blocks_structure(vocab, sizes, shuffled_labels(n, seed));
    };
    e.exhaustive = [vocab = e.cls->vocab, k](std::size_t max_size) {
      std::vector<FiniteStructure> out;
      for (std::size_t n = 0; n <= max_size; ++n) {
        for (const auto& p : partitions(n, k)) out.push_back(blocks_structure(vocab, p));
      }
      return out;
    };
    e.exhaustive_bound = 5;
    e.provenance = "Negative control for closure transport along strong embeddings.";
    e.designated_failure = "transport";
    e.documented_witness =
        "M = one class {0,1}, N = one class {0,1,2}, inclusion 0->0, 1->1, A = {0}: "
        "cl^M(A) = {0,1} but cl^N(A) = {0}";
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<CatalogEntry> full_catalog() {
  auto out = register_builtin_catalog();
  auto neg = adversarial_variants();
  out.insert(out.end(), neg.begin(), neg.end());
  return out;
}

CatalogEntry find_catalog_entry(const std::string& name) {
  for (auto& e : full_catalog()) {
    if (e.name() == name) return e;
  }
  fail(ErrorCode::kInvalidArgument, "unknown class '" + name + "'");
}

}  // namespace muaec
