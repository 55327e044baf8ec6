#include "muaec/aec/embedding_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "muaec/core/error.hpp"

namespace muaec {

EmbeddingSystem EmbeddingSystem::chain(std::vector<FiniteStructure> objects,
                                       const std::vector<PartialMap>& steps) {
  if (objects.empty() || steps.size() + 1 != objects.size()) {
    fail(ErrorCode::kInvalidArgument, "a chain of d+1 structures needs d maps");
  }
  EmbeddingSystem system;
  system.objects = std::move(objects);
  const std::size_t d = system.objects.size();
  for (std::size_t i = 0; i < d; ++i) {
    PartialMap running = PartialMap::identity(system.objects[i].universe());
    system.arrows.push_back({i, i, running});
    for (std::size_t j = i + 1; j < d; ++j) {
      running = steps[j - 1].after(running);
      system.arrows.push_back({i, j, running});
    }
  }
  return system;
}

const Arrow* EmbeddingSystem::find(std::size_t from, std::size_t to) const {
  for (const auto& a : arrows) {
    if (a.from == from && a.to == to) return &a;
  }
  return nullptr;
}

namespace {

std::string arrow_name(const Arrow& a) {
  return std::to_string(a.from) + "->" + std::to_string(a.to);
}

}  // namespace

void check_coherence(const EmbeddingSystem& system) {
  const std::size_t count = system.objects.size();
  for (const auto& a : system.arrows) {
    if (a.from >= count || a.to >= count) {
      fail(ErrorCode::kCoherence, "arrow " + arrow_name(a) + " names a missing object");
    }
    const auto& src = system.objects[a.from];
    const auto& dst = system.objects[a.to];
    if (!(src.vocab() == dst.vocab()) || !is_substructure(src, dst, a.map)) {
      fail(ErrorCode::kCoherence, "arrow " + arrow_name(a) + " is not an embedding");
    }
    if (a.from == a.to && a.map != PartialMap::identity(src.universe())) {
      fail(ErrorCode::kCoherence, "loop " + arrow_name(a) + " is not the identity");
    }
  }
  for (const auto& ij : system.arrows) {
    for (const auto& jk : system.arrows) {
      if (jk.from != ij.to) continue;
      for (const auto& ik : system.arrows) {
        if (ik.from != ij.from || ik.to != jk.to) continue;
        if (jk.map.after(ij.map) != ik.map) {
          fail(ErrorCode::kCoherence, "triangle " + std::to_string(ij.from) + "->" +
                                          std::to_string(ij.to) + "->" + std::to_string(jk.to) +
                                          " does not commute with " + arrow_name(ik));
        }
      }
    }
  }
}

Colimit colimit(const EmbeddingSystem& system) {
  const std::size_t count = system.objects.size();
  if (count == 0) fail(ErrorCode::kInvalidArgument, "colimit of an empty diagram");
  check_coherence(system);

  std::vector<std::size_t> offset(count + 1, 0);
  for (std::size_t i = 0; i < count; ++i) offset[i + 1] = offset[i] + system.objects[i].size();
  std::vector<std::size_t> parent(offset[count]);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : system.arrows) {
    for (const auto& [x, y] : a.map.pairs()) {
      std::size_t rx = find(offset[a.from] + x), ry = find(offset[a.to] + y);
      if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    }
  }

  // Order classes: those meeting the last object by that element, then the rest.
  const std::size_t last = count - 1;
  std::map<std::size_t, Element> label;  // root -> colimit element
  std::vector<Element> top_label(system.objects[last].size());
  Element next = 0;
  for (Element e = 0; e < system.objects[last].size(); ++e) {
    const std::size_t root = find(offset[last] + e);
    if (label.count(root)) {
      fail(ErrorCode::kCoherence, "gluing identifies two elements of object " +
                                      std::to_string(last));
    }
    label[root] = next++;
  }
  for (std::size_t g = 0; g < offset[count]; ++g) {
    const std::size_t root = find(g);
    if (!label.count(root)) label[root] = next++;
  }
  const std::size_t size = next;

  std::vector<PartialMap> cocone;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Element> images(system.objects[i].size());
    for (Element e = 0; e < images.size(); ++e) images[e] = label[find(offset[i] + e)];
    try {
      cocone.push_back(PartialMap::from_images(images));
    } catch (const Error&) {
      fail(ErrorCode::kCoherence,
           "gluing identifies two elements of object " + std::to_string(i));
    }
  }

  const auto& vocab = system.objects[0].vocab_ptr();
  StructureBuilder builder(vocab, size);
  std::vector<std::vector<Element>> tables(vocab->functions().size());
  for (std::size_t f = 0; f < tables.size(); ++f) {
    tables[f].assign(table_size(size, vocab->functions()[f].arity), ~Element{0});
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = system.objects[i];
    for (std::size_t r = 0; r < s.relation_count(); ++r) {
      for (const Tuple& t : s.tuples(r)) builder.add(r, cocone[i].apply(t));
    }
    for (std::size_t f = 0; f < s.function_count(); ++f) {
      const std::size_t arity = vocab->functions()[f].arity;
      const auto& table = s.function_table(f);
      for (std::size_t row = 0; row < table.size() && s.size() > 0; ++row) {
        Tuple args = cocone[i].apply(s.table_args(row, arity));
        Element value = cocone[i].at(table[row]);
        std::size_t idx = 0;
        for (Element x : args) idx = idx * size + x;
        Element& slot = tables[f][idx];
        if (slot != ~Element{0} && slot != value) {
          fail(ErrorCode::kCoherence, "function " + vocab->functions()[f].name +
                                          " becomes ambiguous in the colimit");
        }
        slot = value;
      }
    }
  }
  for (std::size_t f = 0; f < tables.size(); ++f) builder.set_table(f, tables[f]);
  return {builder.build(), std::move(cocone)};
}

}  // namespace muaec
