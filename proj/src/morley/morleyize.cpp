#include "muaec/morley/morleyize.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"
#include "muaec/core/parallel.hpp"

namespace muaec {

namespace {

/// Calls fn on every tuple of the given arity over n elements, lexicographic.
template <typename Fn>
void for_each_tuple(std::size_t n, std::size_t arity, Fn&& fn) {
  if (n == 0 || arity == 0) return;
  Tuple t(arity, 0);
  while (true) {
    fn(static_cast<const Tuple&>(t));
    std::size_t pos = arity;
    while (pos > 0 && ++t[pos - 1] == n) t[--pos] = 0;
    if (pos == 0) return;
  }
}

std::string tuple_text(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

TypeCatalog TypeCatalog::build(AecClassPtr k, std::vector<FiniteStructure> corpus,
                               std::size_t max_arity, std::size_t jobs) {
  TypeCatalog cat;
  cat.base_ = std::move(k);
  cat.max_arity_ = max_arity;
  cat.corpus_ = std::move(corpus);
  const AecClass& cls = *cat.base_;

  std::vector<std::map<std::string, TypeCertificate>> found(cat.corpus_.size());
  parallel_for(cat.corpus_.size(), jobs, [&](std::size_t i) {
    const FiniteStructure& m = cat.corpus_[i];
    if (!cls.member(m)) fail(ErrorCode::kNotAMember, "corpus structure " + std::to_string(i));
    for (std::size_t r = 1; r <= max_arity; ++r) {
      for_each_tuple(m.size(), r, [&](const Tuple& t) {
        auto cert = canonical_certificate(cls, TypeLocator(m, {}, t));
        found[i].try_emplace(cert.code, std::move(cert));
      });
    }
  });
  std::map<std::pair<std::size_t, std::string>, TypeCertificate> all;
  for (auto& part : found) {
    for (auto& [code, cert] : part) {
      all.try_emplace({cert.tuple.size(), code}, std::move(cert));
    }
  }

  std::vector<std::size_t> per_arity(max_arity + 1, 0);
  std::vector<Symbol> extra;
  for (auto& [key, cert] : all) {
    const std::size_t arity = key.first;
    std::string name = "gt" + std::to_string(arity) + "_" + std::to_string(per_arity[arity]++);
    if (cls.vocab->relation_index(name) || cls.vocab->function_index(name)) {
      fail(ErrorCode::kInvalidArgument, "symbol " + name + " already in the base vocabulary");
    }
    cat.by_code_[key.second] = cat.entries_.size();
    extra.push_back({name, arity});
    cat.entries_.push_back({std::move(name), arity, std::move(cert)});
  }
  cat.expanded_ = std::make_shared<const Vocabulary>(cls.vocab->with_relations(extra));
  return cat;
}

std::optional<std::size_t> TypeCatalog::find(const std::string& code) const {
  auto it = by_code_.find(code);
  if (it == by_code_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Expansion {
  std::optional<FiniteStructure> structure;
  Tuple missing;
};

Expansion expand_impl(const TypeCatalog& cat, const FiniteStructure& m) {
  const AecClass& cls = *cat.base();
  if (!(m.vocab() == *cls.vocab)) {
    fail(ErrorCode::kVocabularyMismatch, "expansion input is not over " + cls.name);
  }
  StructureBuilder b(cat.expanded_vocab(), m.size());
  for (std::size_t r = 0; r < m.relation_count(); ++r) {
    for (const Tuple& t : m.tuples(r)) b.add(r, t);
  }
  for (std::size_t f = 0; f < m.function_count(); ++f) b.set_table(f, m.function_table(f));
  const std::size_t offset = cls.vocab->relations().size();
  Expansion out;
  for (std::size_t r = 1; r <= cat.max_arity() && out.missing.empty(); ++r) {
    for_each_tuple(m.size(), r, [&](const Tuple& t) {
      if (!out.missing.empty()) return;
      auto idx = cat.find(canonical_certificate(cls, TypeLocator(m, {}, t)).code);
      if (!idx) {
        out.missing = t;
        return;
      }
      b.add(offset + *idx, t);
    });
  }
  if (out.missing.empty()) out.structure = b.build();
  return out;
}

}  // namespace

FiniteStructure TypeCatalog::expand(const FiniteStructure& m) const {
  Expansion e = expand_impl(*this, m);
  if (!e.structure) {
    fail(ErrorCode::kIncompleteCatalog,
         "no catalog entry for the type of " + tuple_text(e.missing));
  }
  return std::move(*e.structure);
}

std::optional<FiniteStructure> TypeCatalog::try_expand(const FiniteStructure& m) const {
  return expand_impl(*this, m).structure;
}

Morleyization morleyize(const TypeCatalog& catalog) {
  Morleyization out{nullptr, catalog, {}};
  for (const FiniteStructure& m : catalog.corpus()) out.expanded.push_back(catalog.expand(m));

  auto shared = std::make_shared<const TypeCatalog>(catalog);
  const AecClassPtr base = catalog.base();
  // Membership verdicts keyed by structure; reused across closure searches.
  struct Cache {
    std::mutex mutex;
    std::unordered_map<std::size_t, std::vector<std::pair<FiniteStructure, bool>>> verdicts;
  };
  auto cache = std::make_shared<Cache>();
  for (const FiniteStructure& m : out.expanded) cache->verdicts[m.hash()].push_back({m, true});

  auto to_base = [base](const FiniteStructure& m) { return reduct(m, base->vocab); };
  auto cls = std::make_shared<AecClass>();
  cls->name = base->name + "+gt" + std::to_string(catalog.max_arity());
  cls->vocab = catalog.expanded_vocab();
  cls->member = [shared, base, cache, to_base](const FiniteStructure& m) {
    if (!(m.vocab() == *shared->expanded_vocab())) return false;
    const std::size_t h = m.hash();
    {
      std::lock_guard lock(cache->mutex);
      for (const auto& [s, verdict] : cache->verdicts[h]) {
        if (s == m) return verdict;
      }
    }
    const FiniteStructure r = to_base(m);
    bool verdict = base->member(r);
    if (verdict) {
      auto e = shared->try_expand(r);
      verdict = e && *e == m;
    }
    std::lock_guard lock(cache->mutex);
    cache->verdicts[h].push_back({m, verdict});
    return verdict;
  };
  cls->strong_sub = [base, to_base](const FiniteStructure& small, const FiniteStructure& big,
                                    const PartialMap& inclusion) {
    return base->strong_sub(to_base(small), to_base(big), inclusion);
  };
  cls->fast_closure = [base, to_base](const FiniteStructure& m, ElementSet a) {
    return closure(*base, to_base(m), a);
  };
  cls->docs = base->name + " expanded by one relation per realized type over the empty set "
              "of arity at most " + std::to_string(catalog.max_arity()) + " (" +
              std::to_string(catalog.entries().size()) + " symbols)";
  out.cls = cls;
  return out;
}

QfType qf_type(const FiniteStructure& m, ElementSet a, std::span<const Element> b) {
  if (!a.within_universe(m.size())) {
    fail(ErrorCode::kPrecondition, "parameters " + a.to_string() + " leave the universe");
  }
  ElementSet seed = a;
  for (Element x : b) {
    if (x >= m.size()) fail(ErrorCode::kPrecondition, "tuple entry outside the universe");
    seed.insert(x);
  }
  auto sub = induced_substructure(m, function_closure(m, seed));
  const std::size_t size = sub->structure.size();
  std::vector<ColorKey> keys(size);
  for (Element local = 0; local < size; ++local) {
    const Element parent = sub->embedding[local];
    keys[local].push_back(a.contains(parent) ? static_cast<std::int64_t>(parent) : -1);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    keys[*sub->local(b[i])].push_back(static_cast<std::int64_t>(i));
  }
  const CanonicalForm form = canonical_form(sub->structure, keys);
  QfType out{b.size(), relabel(sub->structure, form.labeling), {}};
  out.code = "vocab=" + m.vocab().signature() + " A=" + a.to_string() +
             " vars=" + std::to_string(b.size()) + " diagram=" + form.code;
  return out;
}

QfGaloisReport check_qf_equals_galois(const AecClass& k, std::span<const FiniteStructure> corpus,
                                      std::size_t max_tuple, std::size_t jobs) {
  struct Locator {
    std::size_t structure;
    Tuple tuple;
    std::string qf;
  };
  // (params, length) -> locators, in corpus then lexicographic order.
  std::map<std::pair<std::uint64_t, std::size_t>, std::vector<Locator>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const FiniteStructure& m = corpus[i];
    for (ElementSet a : subsets_by_size(m.universe())) {
      for (std::size_t len = 1; len <= max_tuple; ++len) {
        auto& group = groups[{a.bits(), len}];
        for_each_tuple(m.size(), len, [&](const Tuple& t) {
          group.push_back({i, t, qf_type(m, a, t).code});
        });
      }
    }
  }

  struct Unit {
    ElementSet params;
    const std::vector<Locator>* group;
    std::size_t row;
  };
  std::vector<Unit> units;
  for (const auto& [key, group] : groups) {
    for (std::size_t r = 0; r < group.size(); ++r) units.push_back({ElementSet(key.first), &group, r});
  }
  std::vector<QfGaloisReport> parts(units.size());
  parallel_for(units.size(), jobs, [&](std::size_t u) {
    const auto& [a, group, r] = units[u];
    const Locator& x = (*group)[r];
    for (std::size_t s = r + 1; s < group->size(); ++s) {
      const Locator& y = (*group)[s];
      const bool qf = x.qf == y.qf;
      const bool galois = type_equal(k, TypeLocator(corpus[x.structure], a, x.tuple),
                                     TypeLocator(corpus[y.structure], a, y.tuple));
      ++parts[u].pairs;
      if (qf != galois) {
        parts[u].mismatches.push_back({x.structure, y.structure, a, x.tuple, y.tuple, qf, galois});
      }
    }
  });
  QfGaloisReport report;
  for (auto& p : parts) {
    report.pairs += p.pairs;
    report.mismatches.insert(report.mismatches.end(), p.mismatches.begin(), p.mismatches.end());
  }
  return report;
}

ModelCompletenessReport check_model_complete(const AecClass& k,
                                             std::span<const FiniteStructure> corpus,
                                             std::size_t jobs) {
  std::vector<ModelCompletenessReport> parts(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    const FiniteStructure& n = corpus[i];
    if (!k.member(n)) fail(ErrorCode::kNotAMember, "corpus structure " + std::to_string(i));
    for (ElementSet s : subsets_by_size(n.universe())) {
      auto sub = induced_substructure(n, s);
      if (!sub || !k.member(sub->structure)) continue;
      ++parts[i].pairs;
      if (!k.strong_sub(sub->structure, n, PartialMap::from_images(sub->embedding))) {
        parts[i].mismatches.push_back({i, s});
      }
    }
  });
  ModelCompletenessReport report;
  for (auto& p : parts) {
    report.pairs += p.pairs;
    report.mismatches.insert(report.mismatches.end(), p.mismatches.begin(), p.mismatches.end());
  }
  return report;
}

}  // namespace muaec
