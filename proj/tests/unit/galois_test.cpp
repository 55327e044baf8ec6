#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>
#include <random>

#include "muaec/catalog/catalog.hpp"
#include "muaec/core/error.hpp"
#include "muaec/galois/types.hpp"
#include "test_helpers.hpp"

namespace muaec {
namespace {

using testing::cycle;
using testing::path;

std::vector<Tuple> all_tuples(std::size_t n, std::size_t len) {
  std::vector<Tuple> out;
  if (len == 0) return {Tuple{}};
  if (n == 0) return out;
  Tuple t(len, 0);
  while (true) {
    out.push_back(t);
    std::size_t pos = len;
    while (pos > 0 && ++t[pos - 1] == n) t[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

std::vector<Tuple> realizations_as_singletons(std::initializer_list<Element> xs) {
  std::vector<Tuple> out;
  for (Element x : xs) out.push_back({x});
  return out;
}

TEST(TypeEqual, PathEndpoints) {
  auto cg = make_component_graph_class();
  auto p = path(3);
  EXPECT_TRUE(type_equal(*cg, {p, {}, {0}}, {p, {}, {2}}));
  EXPECT_TRUE(type_equal(*cg, {p, {}, {0}}, {p, {}, {0}}));
  EXPECT_FALSE(type_equal(*cg, {p, {}, {0}}, {p, {}, {1}}));
}

TEST(TypeEqual, ParameterMismatch) {
  auto cg = make_component_graph_class();
  auto p = path(3);
  try {
    type_equal(*cg, {p, ElementSet{0}, {1}}, {p, ElementSet{2}, {1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameterMismatch);
  }
}

TEST(TypeEqual, EqualityPatternMatters) {
  auto cg = make_component_graph_class();
  auto c = cycle(4);
  EXPECT_FALSE(type_equal(*cg, {c, {}, {0, 0}}, {c, {}, {0, 2}}));
  EXPECT_TRUE(type_equal(*cg, {c, {}, {0, 0}}, {c, {}, {3, 3}}));
}

TEST(Certificate, MatchesTypeEqualityOnPath) {
  auto cg = make_component_graph_class();
  auto p = path(3);
  auto c0 = canonical_certificate(*cg, {p, {}, {0}});
  auto c1 = canonical_certificate(*cg, {p, {}, {1}});
  auto c2 = canonical_certificate(*cg, {p, {}, {2}});
  EXPECT_EQ(c0.code, c2.code);
  EXPECT_NE(c0.code, c1.code);
}

TEST(Certificate, InvariantUnderRelabelling) {
  std::mt19937_64 rng(8);
  for (const auto& entry : register_builtin_catalog()) {
    const auto& k = *entry.cls;
    for (const auto& n : entry.exhaustive(5)) {
      if (n.size() == 0) continue;
      std::vector<Element> perm(n.size());
      std::iota(perm.begin(), perm.end(), Element{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      auto m = relabel(n, perm);
      for (const Tuple& b : all_tuples(n.size(), 2)) {
        Tuple moved = {perm[b[0]], perm[b[1]]};
        EXPECT_EQ(canonical_certificate(k, {n, {}, b}).code,
                  canonical_certificate(k, {m, {}, moved}).code);
      }
      // With parameters the permutation must fix them.
      const ElementSet a{0};
      std::vector<Element> fixing(n.size());
      std::iota(fixing.begin(), fixing.end(), Element{0});
      std::shuffle(fixing.begin() + 1, fixing.end(), rng);
      auto fm = relabel(n, fixing);
      for (const Tuple& b : all_tuples(n.size(), 1)) {
        EXPECT_EQ(canonical_certificate(k, {n, a, b}).code,
                  canonical_certificate(k, {fm, a, {fixing[b[0]]}}).code);
      }
    }
  }
}

TEST(Certificate, EquivalentToTypeEquality) {
  // Oracle: direct anchored isomorphism search on closures, all pairs.
  for (const auto& entry : register_builtin_catalog()) {
    const auto& k = *entry.cls;
    auto corpus = entry.exhaustive(4);
    for (std::size_t len = 1; len <= 2; ++len) {
      for (ElementSet a : {ElementSet{}, ElementSet{0}}) {
        std::vector<TypeLocator> locs;
        for (const auto& n : corpus) {
          if (!a.within_universe(n.size())) continue;
          for (const Tuple& b : all_tuples(n.size(), len)) locs.emplace_back(n, a, b);
        }
        std::vector<std::string> codes;
        for (const auto& t : locs) codes.push_back(canonical_certificate(k, t).code);
        for (std::size_t i = 0; i < locs.size(); ++i) {
          for (std::size_t j = 0; j < locs.size(); ++j) {
            ASSERT_EQ(codes[i] == codes[j], type_equal(k, locs[i], locs[j]))
                << entry.name() << " " << i << " " << j;
          }
        }
      }
    }
  }
}

TEST(TypeEqual, IsAnEquivalenceRelation) {
  auto cg = make_component_graph_class();
  auto corpus = all_graphs(4);
  std::vector<TypeLocator> locs;
  for (const auto& n : corpus) {
    if (n.size() == 0) continue;
    for (const Tuple& b : all_tuples(n.size(), 1)) locs.emplace_back(n, ElementSet{0}, b);
  }
  const std::size_t m = locs.size();
  std::vector<std::vector<bool>> eq(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) eq[i][j] = type_equal(*cg, locs[i], locs[j]);
  for (std::size_t i = 0; i < m; ++i) {
    EXPECT_TRUE(eq[i][i]);
    for (std::size_t j = 0; j < m; ++j) {
      EXPECT_EQ(eq[i][j], eq[j][i]);
      if (!eq[i][j]) continue;
      for (std::size_t l = 0; l < m; ++l) {
        if (eq[j][l]) EXPECT_TRUE(eq[i][l]);
      }
    }
  }
}

TEST(Realizations, FourCycleOverVertex) {
  auto cg = make_component_graph_class();
  auto c = cycle(4);
  auto cert = canonical_certificate(*cg, {c, ElementSet{0}, {1}});
  EXPECT_EQ(realizations(*cg, c, ElementSet{0}, cert), realizations_as_singletons({1, 3}));
}

TEST(Realizations, ParameterRealizesOnlyItself) {
  auto cg = make_component_graph_class();
  auto c = cycle(4);
  auto cert = canonical_certificate(*cg, {c, ElementSet{0, 2}, {2}});
  EXPECT_EQ(realizations(*cg, c, ElementSet{0, 2}, cert), realizations_as_singletons({2}));
}

TEST(Realizations, FixedBlocks) {
  auto eq = find_catalog_entry("EQ3");
  auto n = eq.exhaustive(6).back();  // blocks {0,1,2}, {3,4,5}
  auto cert = canonical_certificate(*eq.cls, {n, ElementSet{0}, {1}});
  EXPECT_EQ(realizations(*eq.cls, n, ElementSet{0}, cert), realizations_as_singletons({1, 2}));
}

TEST(Realizations, OutsideClosureSearchesEverything) {
  auto cg = make_component_graph_class();
  auto g = testing::graph(4, {{0, 1}, {2, 3}});
  // 2 is not in cl({0}); its type over {0} is "an edge endpoint elsewhere".
  auto cert = canonical_certificate(*cg, {g, ElementSet{0}, {2}});
  EXPECT_EQ(realizations(*cg, g, ElementSet{0}, cert), realizations_as_singletons({2, 3}));
}

TEST(Algebraic, FourCycleCounts) {
  auto cg = make_component_graph_class();
  auto c = cycle(4);
  TypeLocator t(c, ElementSet{0}, {1});
  EXPECT_TRUE(is_eta_algebraic(*cg, t, 3));
  EXPECT_FALSE(is_eta_algebraic(*cg, t, 2));
  EXPECT_TRUE(is_eta_algebraic(*cg, {c, ElementSet{0}, {0}}, 2));
}

TEST(Algebraic, SuccessorValueIsUnique) {
  auto us1 = make_unary_successor_class();
  StructureBuilder b(us1->vocab, 3);
  b.set_table(0, {1, 2, 1});
  auto n = b.build();
  EXPECT_TRUE(is_eta_algebraic(*us1, {n, ElementSet{0}, {1}}, 2));
  EXPECT_TRUE(is_eta_algebraic(*us1, {n, ElementSet{0}, {2}}, 2));
}

TEST(Algebraic, RefusesOutsideClosure) {
  auto cg = make_component_graph_class();
  auto g = testing::graph(3, {{0, 1}});
  try {
    is_eta_algebraic(*cg, {g, ElementSet{0}, {2}}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfClosure);
  }
}

TEST(Algebraic, MonotoneInEta) {
  for (const auto& entry : register_builtin_catalog()) {
    for (const auto& n : entry.exhaustive(4)) {
      for (ElementSet a : subsets_by_size(n.universe())) {
        for (Element b : closure(*entry.cls, n, a)) {
          TypeLocator t(n, a, {b});
          bool previous = false;
          for (std::size_t eta = 1; eta <= 6; ++eta) {
            const bool now = is_eta_algebraic(*entry.cls, t, eta);
            EXPECT_TRUE(!previous || now);
            previous = now;
          }
        }
      }
    }
  }
}

TEST(Multiuniversal, Hierarchy) {
  auto us1 = find_catalog_entry("US1");
  auto us_corpus = us1.exhaustive(4);
  auto report = audit_multiuniversal(*us1.cls, us_corpus, 2);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.max_count, 1u);

  auto eq3 = find_catalog_entry("EQ3");
  auto eq_corpus = eq3.exhaustive(6);
  EXPECT_TRUE(audit_multiuniversal(*eq3.cls, eq_corpus, 3).passed());
  auto strict = audit_multiuniversal(*eq3.cls, eq_corpus, 2);
  EXPECT_FALSE(strict.passed());
  EXPECT_EQ(strict.max_count, 2u);
}

TEST(Multiuniversal, EmptyCorpus) {
  auto report = audit_multiuniversal(*make_component_graph_class(), {}, 2);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.instances, 0u);
}

TEST(Multiuniversal, ExpectedEtaHoldsForCatalog) {
  for (const auto& entry : register_builtin_catalog()) {
    if (!entry.expected_eta) continue;
    auto corpus = entry.exhaustive(std::min<std::size_t>(entry.exhaustive_bound, 6));
    EXPECT_TRUE(audit_multiuniversal(*entry.cls, corpus, *entry.expected_eta).passed())
        << entry.name();
  }
}

TEST(Stabilizer, FourCycle) {
  auto cg = make_component_graph_class();
  auto c = cycle(4);
  auto so = stabilizer_orbit(*cg, c, ElementSet{0}, 1);
  EXPECT_EQ(so.group.size(), 2u);
  EXPECT_EQ(so.orbit, (ElementSet{1, 3}));
}

TEST(Stabilizer, FullClosureIsRigid) {
  auto cg = make_component_graph_class();
  auto c = cycle(4);
  auto so = stabilizer_orbit(*cg, c, c.universe(), 2);
  EXPECT_EQ(so.group.size(), 1u);
  EXPECT_EQ(so.orbit, ElementSet{2});
}

TEST(Stabilizer, FixedBlocks) {
  auto eq = find_catalog_entry("EQ3");
  auto n = eq.exhaustive(6).back();
  EXPECT_EQ(stabilizer_orbit(*eq.cls, n, ElementSet{0}, 1).orbit, (ElementSet{1, 2}));
}

TEST(Stabilizer, OrbitEqualsRealizations) {
  for (const auto& entry : register_builtin_catalog()) {
    const auto& k = *entry.cls;
    for (const auto& n : entry.exhaustive(5)) {
      for (ElementSet a : subsets_by_size(n.universe())) {
        for (Element b : closure(k, n, a)) {
          auto cert = canonical_certificate(k, {n, a, {b}});
          ElementSet from_types;
          for (const Tuple& t : realizations(k, n, a, cert)) from_types.insert(t[0]);
          EXPECT_EQ(from_types, stabilizer_orbit(k, n, a, b).orbit) << entry.name();
        }
      }
    }
  }
}

TEST(Realizations, CountIsModelInvariant) {
  // Two members containing A with the same labels, both realizing a type
  // realized inside cl(A), have the same number of realizations.
  for (const auto& entry : register_builtin_catalog()) {
    const auto& k = *entry.cls;
    auto corpus = entry.exhaustive(5);
    for (ElementSet a : {ElementSet{0}, ElementSet{0, 1}}) {
      std::map<std::string, std::set<std::size_t>> counts;
      for (const auto& n : corpus) {
        if (!a.within_universe(n.size())) continue;
        for (Element b : closure(k, n, a)) {
          auto cert = canonical_certificate(k, {n, a, {b}});
          counts[cert.code].insert(realizations(k, n, a, cert).size());
        }
      }
      for (const auto& [code, sizes] : counts) EXPECT_EQ(sizes.size(), 1u) << entry.name();
    }
  }
}

}  // namespace
}  // namespace muaec
