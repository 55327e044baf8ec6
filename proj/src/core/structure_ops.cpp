#include <algorithm>

#include "muaec/core/error.hpp"
#include "muaec/core/structure.hpp"

namespace muaec {

ElementSet function_closure(const FiniteStructure& s, ElementSet seed) {
  ElementSet closed = seed;
  const auto& fns = s.vocab().functions();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t f = 0; f < fns.size(); ++f) {
      const std::size_t arity = fns[f].arity;
      const auto& table = s.function_table(f);
      if (arity == 1) {
        for (Element x : closed) {
          const Element v = table[x];
          if (!closed.contains(v)) {
            closed.insert(v);
            changed = true;
          }
        }
        continue;
      }
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (closed.contains(table[i])) continue;
        const Tuple args = s.table_args(i, arity);
        if (std::all_of(args.begin(), args.end(), [&](Element a) { return closed.contains(a); })) {
          closed.insert(table[i]);
          changed = true;
        }
      }
    }
  }
  return closed;
}

std::optional<Element> Induced::local(Element parent) const {
  auto it = std::lower_bound(embedding.begin(), embedding.end(), parent);
  if (it == embedding.end() || *it != parent) return std::nullopt;
  return static_cast<Element>(it - embedding.begin());
}

std::optional<Induced> induced_substructure(const FiniteStructure& s, ElementSet subset) {
  if (!subset.within_universe(s.size())) {
    fail(ErrorCode::kInvalidArgument, "subset " + subset.to_string() + " outside universe");
  }
  if (!s.vocab().is_relational() && function_closure(s, subset) != subset) return std::nullopt;

  const std::size_t m = subset.size();
  std::vector<Element> embedding = subset.elements();
  std::vector<Element> local(s.size(), ~Element{0});
  for (std::size_t i = 0; i < m; ++i) local[embedding[i]] = static_cast<Element>(i);

  if (m == 0) return Induced{FiniteStructure(s.vocab_ptr()), {}};

  StructureBuilder b(s.vocab_ptr(), m);
  Tuple mapped;
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    for (const Tuple& t : s.tuples(r)) {
      mapped.clear();
      bool inside = true;
      for (Element e : t) {
        if (local[e] == ~Element{0}) {
          inside = false;
          break;
        }
        mapped.push_back(local[e]);
      }
      if (inside) b.add(r, mapped);
    }
  }
  for (std::size_t f = 0; f < s.function_count(); ++f) {
    const std::size_t arity = s.vocab().functions()[f].arity;
    const std::size_t rows = table_size(m, arity);
    std::vector<Element> values(rows);
    Tuple parent_args(arity);
    for (std::size_t i = 0; i < rows; ++i) {
      std::size_t rest = i;
      for (std::size_t k = arity; k-- > 0;) {
        parent_args[k] = embedding[rest % m];
        rest /= m;
      }
      values[i] = local[s.apply(f, parent_args)];
    }
    b.set_table(f, std::move(values));
  }
  return Induced{b.build(), std::move(embedding)};
}

FiniteStructure relabel(const FiniteStructure& s, std::span<const Element> perm) {
  const std::size_t n = s.size();
  if (perm.size() != n) fail(ErrorCode::kInvalidArgument, "relabeling has the wrong length");
  std::vector<Element> inverse(n, ~Element{0});
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || inverse[perm[i]] != ~Element{0}) {
      fail(ErrorCode::kInvalidArgument, "relabeling is not a permutation");
    }
    inverse[perm[i]] = static_cast<Element>(i);
  }
  if (n == 0) return s;
  StructureBuilder b(s.vocab_ptr(), n);
  Tuple mapped;
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    for (const Tuple& t : s.tuples(r)) {
      mapped.resize(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) mapped[k] = perm[t[k]];
      b.add(r, mapped);
    }
  }
  for (std::size_t f = 0; f < s.function_count(); ++f) {
    const std::size_t arity = s.vocab().functions()[f].arity;
    const auto& table = s.function_table(f);
    std::vector<Element> values(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Tuple args = s.table_args(i, arity);
      Tuple new_args(arity);
      for (std::size_t k = 0; k < arity; ++k) new_args[k] = perm[args[k]];
      values[s.table_index(new_args)] = perm[table[i]];
    }
    b.set_table(f, std::move(values));
  }
  return b.build();
}

FiniteStructure reduct(const FiniteStructure& s, const VocabularyPtr& smaller) {
  std::vector<std::size_t> rel_src;
  for (const auto& sym : smaller->relations()) {
    auto idx = s.vocab().relation_index(sym.name);
    if (!idx || s.vocab().relations()[*idx].arity != sym.arity) {
      fail(ErrorCode::kVocabularyMismatch, "reduct: relation " + sym.name + " not in vocabulary");
    }
    rel_src.push_back(*idx);
  }
  std::vector<std::size_t> fn_src;
  for (const auto& sym : smaller->functions()) {
    auto idx = s.vocab().function_index(sym.name);
    if (!idx || s.vocab().functions()[*idx].arity != sym.arity) {
      fail(ErrorCode::kVocabularyMismatch, "reduct: function " + sym.name + " not in vocabulary");
    }
    fn_src.push_back(*idx);
  }
  if (s.size() == 0) return FiniteStructure(smaller);
  StructureBuilder b(smaller, s.size());
  for (std::size_t r = 0; r < rel_src.size(); ++r) {
    for (const Tuple& t : s.tuples(rel_src[r])) b.add(r, t);
  }
  for (std::size_t f = 0; f < fn_src.size(); ++f) b.set_table(f, s.function_table(fn_src[f]));
  return b.build();
}

FiniteStructure disjoint_union(const FiniteStructure& a, const FiniteStructure& b) {
  if (!(a.vocab() == b.vocab())) {
    fail(ErrorCode::kVocabularyMismatch, "disjoint union of structures over distinct signatures");
  }
  for (const auto& f : a.vocab().functions()) {
    if (f.arity != 1) {
      fail(ErrorCode::kInvalidArgument, "disjoint union needs unary functions only");
    }
  }
  const std::size_t n = a.size() + b.size();
  if (n == 0) return a;
  StructureBuilder out(a.vocab_ptr(), n);
  const auto shift = static_cast<Element>(a.size());
  Tuple t2;
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    for (const Tuple& t : a.tuples(r)) out.add(r, t);
    for (const Tuple& t : b.tuples(r)) {
      t2 = t;
      for (Element& e : t2) e += shift;
      out.add(r, t2);
    }
  }
  for (std::size_t f = 0; f < a.function_count(); ++f) {
    std::vector<Element> values = a.function_table(f);
    for (Element v : b.function_table(f)) values.push_back(v + shift);
    out.set_table(f, std::move(values));
  }
  return out.build();
}

}  // namespace muaec
