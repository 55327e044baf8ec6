#include <gtest/gtest.h>

#include <set>

#include "muaec/catalog/catalog.hpp"
#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"
#include "muaec/morley/chain.hpp"
#include "muaec/morley/morleyize.hpp"
#include "test_helpers.hpp"

namespace muaec {
namespace {

using testing::cycle;
using testing::graph;
using testing::path;

std::vector<Tuple> tuples_of(const FiniteStructure& m, std::size_t relation) {
  return m.tuples(relation);
}

ElementSet plus(ElementSet s, Element x) {
  s.insert(x);
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInternalContradiction;
}

TEST(TypeCatalog, PathOneTypes) {
  auto cat = TypeCatalog::build(make_component_graph_class(), {path(3)}, 1);
  ASSERT_EQ(cat.entries().size(), 2u);
  EXPECT_EQ(cat.entries()[0].symbol, "gt1_0");
  EXPECT_EQ(cat.entries()[1].symbol, "gt1_1");
  auto m = cat.expand(path(3));
  std::vector<std::vector<Tuple>> marks{tuples_of(m, 1), tuples_of(m, 2)};
  std::sort(marks.begin(), marks.end());
  EXPECT_EQ(marks, (std::vector<std::vector<Tuple>>{{{0}, {2}}, {{1}}}));
}

TEST(TypeCatalog, EmptyCorpus) {
  auto cg = make_component_graph_class();
  auto cat = TypeCatalog::build(cg, {}, 2);
  EXPECT_TRUE(cat.entries().empty());
  EXPECT_EQ(*cat.expanded_vocab(), *cg->vocab);
  auto mz = morleyize(cat);
  EXPECT_TRUE(mz.cls->member(cat.expand(FiniteStructure(cg->vocab))));
}

TEST(TypeCatalog, FourCyclePairs) {
  auto cat = TypeCatalog::build(make_component_graph_class(), {cycle(4)}, 2);
  std::size_t pairs = 0;
  for (const auto& e : cat.entries()) pairs += e.arity == 2;
  EXPECT_EQ(pairs, 3u);  // equal, adjacent, antipodal
  auto m = cat.expand(cycle(4));
  // Each pair symbol holds of exactly one residue class of b - a mod 4.
  std::vector<std::set<int>> gaps;
  for (std::size_t r = 0; r < cat.entries().size(); ++r) {
    if (cat.entries()[r].arity != 2) continue;
    std::set<int> g;
    for (const Tuple& t : m.tuples(1 + r)) {
      g.insert((static_cast<int>(t[1]) - static_cast<int>(t[0]) + 4) % 4);
    }
    gaps.push_back(g);
  }
  std::sort(gaps.begin(), gaps.end());
  EXPECT_EQ(gaps, (std::vector<std::set<int>>{{0}, {1, 3}, {2}}));
  EXPECT_EQ(m.tuples(1).size() + m.tuples(2).size() + m.tuples(3).size() + m.tuples(4).size(), 20u);
}

TEST(TypeCatalog, IncompleteCatalogNamesTuple) {
  auto cat = TypeCatalog::build(make_component_graph_class(), {path(3)}, 1);
  EXPECT_EQ(code_of([&] { cat.expand(cycle(4)); }), ErrorCode::kIncompleteCatalog);
  EXPECT_FALSE(cat.try_expand(cycle(4)).has_value());
}

TEST(TypeCatalog, RelationsPartitionTuples) {
  for (const auto& entry : register_builtin_catalog()) {
    auto cat = TypeCatalog::build(entry.cls, entry.exhaustive(4), 2);
    const std::size_t base = entry.cls->vocab->relations().size();
    for (const auto& m : morleyize(cat).expanded) {
      for (std::size_t arity = 1; arity <= 2; ++arity) {
        std::size_t marked = 0;
        for (std::size_t r = 0; r < cat.entries().size(); ++r) {
          if (cat.entries()[r].arity == arity) marked += m.tuples(base + r).size();
        }
        std::size_t total = 1;
        for (std::size_t i = 0; i < arity; ++i) total *= m.size();
        EXPECT_EQ(marked, m.size() ? total : 0) << entry.name();
      }
    }
  }
}

TEST(TypeCatalog, ExpansionCommutesWithStrongInclusions) {
  for (const auto& entry : register_builtin_catalog()) {
    auto cat = TypeCatalog::build(entry.cls, entry.exhaustive(4), 2);
    auto mz = morleyize(cat);
    for (std::size_t i = 0; i < cat.corpus().size(); ++i) {
      const auto& n = cat.corpus()[i];
      for (ElementSet s : subsets_by_size(n.universe())) {
        if (!is_strong_subset(*entry.cls, n, s)) continue;
        auto small = induced_substructure(n, s);
        auto expanded_small = induced_substructure(mz.expanded[i], s);
        EXPECT_EQ(cat.expand(small->structure), expanded_small->structure) << entry.name();
        EXPECT_TRUE(mz.cls->member(expanded_small->structure));
      }
    }
  }
}

TEST(QfType, PathEndpoints) {
  auto cat = TypeCatalog::build(make_component_graph_class(), {path(3)}, 1);
  auto m = cat.expand(path(3));
  EXPECT_EQ(qf_type(m, {}, Tuple{0}), qf_type(m, {}, Tuple{2}));
  EXPECT_FALSE(qf_type(m, {}, Tuple{0}) == qf_type(m, {}, Tuple{1}));
}

TEST(QfType, FourCyclePairs) {
  auto cat = TypeCatalog::build(make_component_graph_class(), {cycle(4)}, 2);
  auto m = cat.expand(cycle(4));
  EXPECT_FALSE(qf_type(m, {}, Tuple{0, 2}) == qf_type(m, {}, Tuple{0, 1}));
  EXPECT_EQ(qf_type(m, {}, Tuple{1, 3}), qf_type(m, {}, Tuple{0, 2}));
}

TEST(QfType, TupleInsideParameters) {
  auto g1 = graph(3, {{0, 1}});
  auto g2 = graph(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(qf_type(g1, ElementSet{0, 1}, Tuple{1}), qf_type(g2, ElementSet{0, 1}, Tuple{1}));
  EXPECT_FALSE(qf_type(g1, ElementSet{0, 1}, Tuple{1}) == qf_type(g1, ElementSet{0, 1}, Tuple{0}));
}

TEST(QfType, MatchesAnchoredIsomorphismOfGeneratedSubstructures) {
  auto us1 = make_unary_successor_class();
  auto corpus = all_unary_functions(4);
  for (const auto& m1 : corpus) {
    for (const auto& m2 : corpus) {
      for (Element b1 = 0; b1 < m1.size(); ++b1) {
        for (Element b2 = 0; b2 < m2.size(); ++b2) {
          for (ElementSet a : {ElementSet{}, ElementSet{0}}) {
            auto s1 = induced_substructure(m1, function_closure(m1, plus(a, b1)));
            auto s2 = induced_substructure(m2, function_closure(m2, plus(a, b2)));
            Tuple from{*s1->local(b1)}, to{*s2->local(b2)};
            for (Element x : a) {
              from.push_back(*s1->local(x));
              to.push_back(*s2->local(x));
            }
            auto anchor = PartialMap::from_tuples(from, to);
            const bool oracle = anchor && s1->structure.size() == s2->structure.size() &&
                                !testing::brute_force_isomorphisms(s1->structure, s2->structure,
                                                                   *anchor)
                                     .empty();
            EXPECT_EQ(qf_type(m1, a, Tuple{b1}) == qf_type(m2, a, Tuple{b2}), oracle);
          }
        }
      }
    }
  }
}

TEST(QfGalois, IdenticalLocatorsAgree) {
  auto cg = make_component_graph_class();
  std::vector<FiniteStructure> corpus{path(3), path(3)};
  auto cat = TypeCatalog::build(cg, corpus, 1);
  auto mz = morleyize(cat);
  EXPECT_TRUE(check_qf_equals_galois(*mz.cls, mz.expanded, 1).passed());
}

TEST(QfGalois, RawComponentClassDisagrees) {
  auto cg = make_component_graph_class();
  std::vector<FiniteStructure> corpus{path(3), graph(1, {})};
  auto report = check_qf_equals_galois(*cg, corpus, 1);
  bool found = false;
  for (const auto& m : report.mismatches) {
    if (m.params.empty() && m.structure1 == 0 && m.tuple1 == Tuple{0} && m.structure2 == 1 &&
        m.tuple2 == Tuple{0}) {
      found = m.qf_equal && !m.galois_equal;
    }
  }
  EXPECT_TRUE(found);
  auto cat = TypeCatalog::build(cg, corpus, 1);
  auto mz = morleyize(cat);
  EXPECT_TRUE(check_qf_equals_galois(*mz.cls, mz.expanded, 1).passed());
}

TEST(QfGalois, ExpandedComponentGraphsUpToThree) {
  auto cat = TypeCatalog::build(make_component_graph_class(), all_graphs(3), 2);
  auto mz = morleyize(cat);
  auto report = check_qf_equals_galois(*mz.cls, mz.expanded, 2);
  EXPECT_GT(report.pairs, 0u);
  EXPECT_TRUE(report.passed());
}

TEST(ModelComplete, SelfInclusion) {
  auto cg = make_component_graph_class();
  auto r = check_model_complete(*cg, std::vector<FiniteStructure>{graph(0, {})});
  EXPECT_EQ(r.pairs, 1u);
  EXPECT_TRUE(r.passed());
}

TEST(ModelComplete, RawComponentClassFails) {
  auto cg = make_component_graph_class();
  auto r = check_model_complete(*cg, std::vector<FiniteStructure>{path(3)});
  bool found = false;
  for (const auto& m : r.mismatches) found |= m.subset == ElementSet{0, 1};
  EXPECT_TRUE(found);
}

TEST(ModelComplete, ExpandedComponentClassPasses) {
  auto cat = TypeCatalog::build(make_component_graph_class(), all_graphs(4), 1);
  auto mz = morleyize(cat);
  EXPECT_TRUE(check_model_complete(*mz.cls, mz.expanded).passed());
}

TEST(ModelComplete, QfTypesImplyModelCompleteness) {
  for (const auto& entry : full_catalog()) {
    for (std::size_t arity = 0; arity <= 1; ++arity) {
      auto cat = TypeCatalog::build(entry.cls, entry.exhaustive(3), arity);
      auto mz = morleyize(cat);
      const bool qf = check_qf_equals_galois(*mz.cls, mz.expanded, 1).passed();
      const bool mc = check_model_complete(*mz.cls, mz.expanded).passed();
      EXPECT_TRUE(!qf || mc) << entry.name() << " arity " << arity;
    }
  }
}

// Chain scenarios.

OracleRecord record(std::vector<std::size_t> index_set, FiniteStructure s, Tuple t) {
  return {std::move(index_set), {std::move(s), std::move(t)}};
}

FiniteStructure paths3(std::size_t copies) {
  FiniteStructure out = graph(0, {});
  for (std::size_t i = 0; i < copies; ++i) out = disjoint_union(out, path(3));
  return out;
}

TEST(Chain, DepthOneIsTheWitness) {
  auto cg = make_component_graph_class();
  auto r = compactness_chain(*cg, scripted_oracle({record({0}, path(3), {0})}), 1);
  ASSERT_EQ(r.system.objects.size(), 1u);
  EXPECT_EQ(r.system.objects[0], path(3));
  EXPECT_EQ(r.tuples[0], Tuple{0});
}

TEST(Chain, ConstantSequence) {
  auto us1 = make_unary_successor_class();
  StructureBuilder b(us1->vocab, 1);
  b.set("s", {0}, 0);
  auto point = b.build();
  auto oracle = scripted_oracle({record({0}, point, {0}), record({0, 1}, point, {0, 0}),
                                 record({0, 1, 2}, point, {0, 0, 0})});
  auto r = compactness_chain(*us1, oracle, 3);
  ASSERT_EQ(r.system.objects.size(), 3u);
  for (const auto& m : r.system.objects) EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(r.tuples.back(), (Tuple{0, 0, 0}));
  EXPECT_NO_THROW(check_coherence(r.system));
}

TEST(Chain, ThreeDisjointPathEndpoints) {
  auto cg = make_component_graph_class();
  auto oracle = scripted_oracle({record({0}, paths3(1), {0}), record({0, 1}, paths3(2), {0, 3}),
                                 record({0, 1, 2}, paths3(3), {0, 3, 6})});
  auto r = compactness_chain(*cg, oracle, 3);
  const auto& top = r.system.objects.back();
  EXPECT_TRUE(are_isomorphic(top, paths3(3)));
  EXPECT_EQ(canonical_certificate(*cg, TypeLocator(top, {}, r.tuples.back())),
            canonical_certificate(*cg, TypeLocator(paths3(3), {}, {0, 3, 6})));
  EXPECT_NO_THROW(check_coherence(r.system));
  EXPECT_TRUE(are_isomorphic(r.colimit.structure, top));
  // Every composite arrow is present.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) EXPECT_NE(r.system.find(i, j), nullptr);
  }
}

TEST(Chain, OneBlockOfThree) {
  auto eq3 = make_fixed_block_class(3);
  auto block = find_catalog_entry("EQ3").exhaustive(3).back();
  ASSERT_EQ(block.size(), 3u);
  auto oracle = scripted_oracle({record({0}, block, {0}), record({0, 1}, block, {1, 2}),
                                 record({0, 1, 2}, block, {2, 0, 1})});
  auto r = compactness_chain(*eq3, oracle, 3);
  EXPECT_EQ(r.system.objects.back().size(), 3u);
  const Tuple& t = r.tuples.back();
  EXPECT_TRUE(t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
}

TEST(Chain, IncompatiblePrefixNamesIndexSet) {
  auto cg = make_component_graph_class();
  auto oracle = scripted_oracle({record({0}, graph(1, {}), {0}),
                                 record({0, 1}, paths3(2), {0, 3})});
  try {
    compactness_chain(*cg, oracle, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCompletenessViolation);
    EXPECT_NE(std::string(e.what()).find("{0,1}"), std::string::npos) << e.what();
  }
}

TEST(Chain, IncompatibleSideRecordNamesIndexSet) {
  auto cg = make_component_graph_class();
  auto oracle = scripted_oracle({record({0}, paths3(1), {0}), record({0, 1}, paths3(2), {0, 3}),
                                 record({1}, paths3(1), {1})});
  try {
    compactness_chain(*cg, oracle, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCompletenessViolation);
    EXPECT_NE(std::string(e.what()).find("{1}"), std::string::npos) << e.what();
  }
}

TEST(Chain, MissingWitness) {
  auto cg = make_component_graph_class();
  EXPECT_EQ(code_of([&] { compactness_chain(*cg, scripted_oracle({}), 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(Chain, AmalgamationFailure) {
  // Graphs on at most two vertices under induced substructure: two edges
  // over a shared vertex do not fit.
  auto small = std::make_shared<AecClass>();
  small->name = "SMALL";
  small->vocab = testing::graph_vocab();
  small->member = [](const FiniteStructure& s) { return s.size() <= 2; };
  small->strong_sub = [](const FiniteStructure& a, const FiniteStructure& b,
                         const PartialMap& f) { return is_substructure(a, b, f); };
  auto edge = graph(2, {{0, 1}});
  auto oracle = scripted_oracle({record({0}, edge, {0}), record({0, 1}, edge, {0, 1})});
  EXPECT_EQ(code_of([&] { compactness_chain(*small, oracle, 2); }),
            ErrorCode::kAmalgamationFailure);
}

}  // namespace
}  // namespace muaec
