#include <algorithm>
#include <numeric>

#include "muaec/catalog/catalog.hpp"
#include "muaec/core/error.hpp"

namespace muaec {

namespace {

bool edge(const FiniteStructure& s, std::size_t rel, Element u, Element v) {
  return s.indicator(rel)[u * s.size() + v] != 0;
}

bool symmetric_irreflexive(const FiniteStructure& s) {
  const std::size_t n = s.size();
  for (Element u = 0; u < n; ++u) {
    if (edge(s, 0, u, u)) return false;
    for (Element v = u + 1; v < n; ++v) {
      if (edge(s, 0, u, v) != edge(s, 0, v, u)) return false;
    }
  }
  return true;
}

ElementSet neighbourhood_row(const FiniteStructure& s, std::size_t rel, Element u) {
  ElementSet out;
  for (Element v = 0; v < s.size(); ++v) {
    if (edge(s, rel, u, v)) out.insert(v);
  }
  return out;
}

/// Blocks of an equivalence relation E (relation 0); nullopt when E is not one.
std::optional<std::vector<ElementSet>> equivalence_blocks(const FiniteStructure& s) {
  const std::size_t n = s.size();
  std::vector<ElementSet> block(n);
  for (Element u = 0; u < n; ++u) block[u] = neighbourhood_row(s, 0, u);
  for (Element u = 0; u < n; ++u) {
    if (!block[u].contains(u)) return std::nullopt;
    for (Element v : block[u]) {
      if (block[v] != block[u]) return std::nullopt;
    }
  }
  return block;
}

ElementSet image_of(const PartialMap& f) { return f.range(); }

/// Union of the parts of `parts` (indexed by element) meeting `a`.
ElementSet union_of_parts_meeting(const std::vector<ElementSet>& parts, ElementSet a) {
  ElementSet out;
  for (Element x : a) out |= parts[x];
  return out;
}

std::vector<ElementSet> graph_components(const FiniteStructure& s, std::size_t rel) {
  const std::size_t n = s.size();
  std::vector<ElementSet> comp(n);
  std::vector<bool> done(n, false);
  for (Element start = 0; start < n; ++start) {
    if (done[start]) continue;
    ElementSet seen{start};
    std::vector<Element> stack = {start};
    while (!stack.empty()) {
      Element u = stack.back();
      stack.pop_back();
      for (Element v = 0; v < n; ++v) {
        if ((edge(s, rel, u, v) || edge(s, rel, v, u)) && !seen.contains(v)) {
          seen.insert(v);
          stack.push_back(v);
        }
      }
    }
    for (Element v : seen) {
      comp[v] = seen;
      done[v] = true;
    }
  }
  return comp;
}

std::size_t forward_orbit_size(const FiniteStructure& s, Element x) {
  ElementSet seen;
  const Element* table = s.function_table(0).data();
  while (!seen.contains(x)) {
    seen.insert(x);
    x = table[x];
  }
  return seen.size();
}

bool substructure(const FiniteStructure& small, const FiniteStructure& big, const PartialMap& f) {
  return is_substructure(small, big, f);
}

}  // namespace

AecClassPtr make_unary_successor_class() {
  auto k = std::make_shared<AecClass>();
  k->name = "US1";
  k->vocab = make_vocabulary({}, {{"s", 1}});
  k->member = [](const FiniteStructure&) { return true; };
  k->strong_sub = substructure;
  k->fast_closure = [](const FiniteStructure& n, ElementSet a) { return function_closure(n, a); };
  k->docs =
      "All structures with one unary function s, ordered by substructure. A universal "
      "class: closures are forward orbits, so every closure element is named by a term "
      "and has a unique realization over A.";
  return k;
}

AecClassPtr make_bounded_orbit_class(std::size_t bound) {
  auto k = std::make_shared<AecClass>();
  k->name = "LF" + std::to_string(bound);
  k->vocab = make_vocabulary({}, {{"s", 1}});
  k->member = [bound](const FiniteStructure& s) {
    for (Element x = 0; x < s.size(); ++x) {
      if (forward_orbit_size(s, x) > bound) return false;
    }
    return true;
  };
  k->strong_sub = substructure;
  k->fast_closure = [](const FiniteStructure& n, ElementSet a) { return function_closure(n, a); };
  k->docs = "Unary-function structures whose forward orbits have at most " +
            std::to_string(bound) +
            " elements, ordered by substructure. The closure of a finite set has at most " +
            std::to_string(bound) + " elements per generator.";
  return k;
}

AecClassPtr make_component_graph_class() {
  auto k = std::make_shared<AecClass>();
  k->name = "CG";
  k->vocab = make_vocabulary({{"E", 2}});
  k->member = symmetric_irreflexive;
  k->strong_sub = [](const FiniteStructure& small, const FiniteStructure& big,
                     const PartialMap& f) {
    if (!is_substructure(small, big, f)) return false;
    const ElementSet img = image_of(f);
    for (Element u : img) {
      if (!neighbourhood_row(big, 0, u).is_subset_of(img)) return false;
    }
    return true;
  };
  k->fast_closure = [](const FiniteStructure& n, ElementSet a) {
    return union_of_parts_meeting(graph_components(n, 0), a);
  };
  k->docs =
      "Finite simple graphs. G is strong in H when G is an induced subgraph and no edge of "
      "H leaves G, i.e. G is a union of components of H. cl(A) is the union of the "
      "components meeting A; the distance to A is part of a vertex's type.";
  return k;
}

AecClassPtr make_fixed_block_class(std::size_t k_size) {
  auto k = std::make_shared<AecClass>();
  k->name = "EQ" + std::to_string(k_size);
  k->vocab = make_vocabulary({{"E", 2}});
  k->member = [k_size](const FiniteStructure& s) {
    auto blocks = equivalence_blocks(s);
    if (!blocks) return false;
    return std::all_of(blocks->begin(), blocks->end(),
                       [&](ElementSet b) { return b.size() == k_size; });
  };
  k->strong_sub = [](const FiniteStructure& small, const FiniteStructure& big,
                     const PartialMap& f) {
    if (!is_substructure(small, big, f)) return false;
    auto blocks = equivalence_blocks(big);
    if (!blocks) return false;
    const ElementSet img = image_of(f);
    for (Element u : img) {
      if (!(*blocks)[u].is_subset_of(img)) return false;
    }
    return true;
  };
  k->fast_closure = [](const FiniteStructure& n, ElementSet a) {
    auto blocks = equivalence_blocks(n);
    if (!blocks) fail(ErrorCode::kNotAMember, "E is not an equivalence relation");
    return union_of_parts_meeting(*blocks, a);
  };
  k->docs = "Equivalence relations all of whose classes have exactly " + std::to_string(k_size) +
            " elements, ordered by substructure where classes do not grow. A finite "
            "stand-in for the class of equivalence relations with infinite classes: the " +
            std::to_string(k_size - 1) +
            " other members of a class are indistinguishable over any one of them.";
  return k;
}

std::size_t partition_code_family_size(std::size_t m_max) {
  // m_max coded sets plus 1 + 2 + ... + m_max points.
  return m_max + m_max * (m_max + 1) / 2;
}

namespace {

// PCm vocabulary: P, Q, E, R2..Rm.
constexpr std::size_t kP = 0, kQ = 1, kE = 2, kR = 3;

struct PcView {
  bool ok = false;
  std::vector<std::size_t> set_size;  // n(s) for s in Q, 0 otherwise
};

PcView inspect_partition_code(const FiniteStructure& s, std::size_t m_max) {
  const std::size_t n = s.size();
  PcView view;
  view.set_size.assign(n, 0);
  std::vector<std::size_t> memberships(n, 0);
  for (Element x = 0; x < n; ++x) {
    const Element one[] = {x};
    if (s.holds(kP, one) == s.holds(kQ, one)) return view;
  }
  for (const Tuple& t : s.tuples(kE)) {
    const Element x[] = {t[0]}, q[] = {t[1]};
    if (!s.holds(kP, x) || !s.holds(kQ, q)) return view;
    ++view.set_size[t[1]];
    ++memberships[t[0]];
  }
  for (Element x = 0; x < n; ++x) {
    const Element one[] = {x};
    if (s.holds(kQ, one) && (view.set_size[x] < 1 || view.set_size[x] > m_max)) return view;
    if (s.holds(kP, one) && memberships[x] != 1) return view;
  }
  for (std::size_t m = 2; m <= m_max; ++m) {
    const std::size_t rel = kR + (m - 2);
    std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
    for (const Tuple& t : s.tuples(rel)) {
      const Element a[] = {t[0]}, b[] = {t[1]};
      if (!s.holds(kQ, a) || !s.holds(kQ, b)) return view;
      if (view.set_size[t[0]] != 1 || view.set_size[t[1]] != m) return view;
      ++out_deg[t[0]];
      ++in_deg[t[1]];
    }
    for (Element x = 0; x < n; ++x) {
      const Element one[] = {x};
      if (!s.holds(kQ, one)) continue;
      if (view.set_size[x] == 1 && out_deg[x] != 1) return view;
      if (view.set_size[x] == m && in_deg[x] != 1) return view;
    }
  }
  view.ok = true;
  return view;
}

}  // namespace

AecClassPtr make_partition_code_class(std::size_t m_max) {
  if (m_max < 2) fail(ErrorCode::kInvalidArgument, "partition codes need m_max >= 2");
  std::vector<Symbol> rels = {{"P", 1}, {"Q", 1}, {"E", 2}};
  for (std::size_t m = 2; m <= m_max; ++m) rels.push_back({"R" + std::to_string(m), 2});
  auto k = std::make_shared<AecClass>();
  k->name = "PC" + std::to_string(m_max);
  k->vocab = make_vocabulary(rels);
  k->member = [m_max](const FiniteStructure& s) { return inspect_partition_code(s, m_max).ok; };
  k->strong_sub = [](const FiniteStructure& small, const FiniteStructure& big,
                     const PartialMap& f) {
    if (!is_substructure(small, big, f)) return false;
    const ElementSet img = image_of(f);
    for (const Tuple& t : big.tuples(kE)) {
      if (img.contains(t[0]) != img.contains(t[1])) return false;
    }
    return true;
  };
  k->fast_closure = [](const FiniteStructure& n, ElementSet a) {
    // Families: points glued to their set, singletons glued to their R-partners.
    const std::size_t size = n.size();
    std::vector<Element> parent(size);
    std::iota(parent.begin(), parent.end(), Element{0});
    auto find = [&](Element x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t r = kE; r < n.relation_count(); ++r) {
      for (const Tuple& t : n.tuples(r)) parent[find(t[0])] = find(t[1]);
    }
    ElementSet roots, out;
    for (Element x : a) roots.insert(find(x));
    for (Element x = 0; x < size; ++x) {
      if (roots.contains(find(x))) out.insert(x);
    }
    return out;
  };
  k->docs =
      "Truncated partition codes: points P, coded sets Q, membership E, and for each m in "
      "2.." + std::to_string(m_max) +
      " a bijection Rm from the one-point sets onto the m-point sets. Every set has between "
      "1 and " + std::to_string(m_max) +
      " points and every point lies in exactly one set. Ordered by substructure where "
      "coded sets do not grow. The untruncated class needs infinitely many Rm and so has "
      "no finite members; only this truncation is represented.";
  return k;
}

AecClassPtr make_no_intersection_class() {
  auto k = std::make_shared<AecClass>();
  k->name = "NOINT";
  k->vocab = make_vocabulary({{"E", 2}});
  k->member = [](const FiniteStructure& s) {
    return symmetric_irreflexive(s) && !s.tuples(0).empty();
  };
  k->strong_sub = substructure;
  k->docs =
      "Negative control: graphs with at least one edge, ordered by induced subgraph. Two "
      "strong subgraphs can meet in an edgeless set, so closures need not be members.";
  return k;
}

AecClassPtr make_mixed_block_class(std::size_t k_size) {
  auto k = std::make_shared<AecClass>();
  k->name = "EQMIX" + std::to_string(k_size);
  k->vocab = make_vocabulary({{"E", 2}});
  k->member = [k_size](const FiniteStructure& s) {
    auto blocks = equivalence_blocks(s);
    if (!blocks) return false;
    return std::all_of(blocks->begin(), blocks->end(),
                       [&](ElementSet b) { return b.size() <= k_size; });
  };
  k->strong_sub = [k_size](const FiniteStructure& small, const FiniteStructure& big,
                           const PartialMap& f) {
    if (!is_substructure(small, big, f)) return false;
    auto blocks = equivalence_blocks(big);
    if (!blocks) return false;
    const ElementSet img = image_of(f);
    for (Element u : img) {
      const ElementSet big_block = (*blocks)[u];
      if (!big_block.is_subset_of(img) && big_block.size() != k_size) return false;
    }
    return true;
  };
  k->docs = "Negative control: equivalence relations with classes of at most " +
            std::to_string(k_size) +
            " elements. A class may grow along a strong embedding only into a class of "
            "size exactly " + std::to_string(k_size) +
            ". Intersections exist, but closures are not preserved by strong embeddings.";
  return k;
}

}  // namespace muaec
