#include <gtest/gtest.h>

#include "muaec/catalog/catalog.hpp"
#include "muaec/core/error.hpp"
#include "muaec/galois/types.hpp"
#include "muaec/isolation/isolation.hpp"
#include "test_helpers.hpp"

namespace muaec {
namespace {

using testing::cycle;
using testing::path;

/// Oracle for isolates(): every tuple of M, compared with type_equal.
bool isolates_brute(const AecClass& k, const FiniteStructure& m, ElementSet a, ElementSet small,
                    const Tuple& b) {
  Tuple t(b.size(), 0);
  while (true) {
    if (type_equal(k, TypeLocator(m, small, b), TypeLocator(m, small, t)) &&
        !type_equal(k, TypeLocator(m, a, b), TypeLocator(m, a, t))) {
      return false;
    }
    std::size_t pos = t.size();
    while (pos > 0 && ++t[pos - 1] == m.size()) t[--pos] = 0;
    if (pos == 0) return true;
  }
}

TEST(Isolates, TypeIsolatesItself) {
  auto cg = make_component_graph_class();
  auto c = cycle(5);
  EXPECT_TRUE(isolates(*cg, c, ElementSet{0, 2}, ElementSet{0, 2}, Tuple{1}));
}

TEST(Isolates, FourCycleOppositeParameters) {
  auto cg = make_component_graph_class();
  EXPECT_TRUE(isolates(*cg, cycle(4), ElementSet{0, 2}, ElementSet{0}, Tuple{1}));
}

TEST(Isolates, PathFromOneEnd) {
  auto cg = make_component_graph_class();
  auto p5 = path(5);
  EXPECT_TRUE(isolates(*cg, p5, ElementSet{0, 4}, ElementSet{0}, Tuple{1}));
  EXPECT_FALSE(isolates(*cg, p5, ElementSet{0, 4}, ElementSet{}, Tuple{1}));
}

TEST(Isolates, RejectsSmallOutsideA) {
  auto cg = make_component_graph_class();
  EXPECT_THROW(isolates(*cg, path(3), ElementSet{0}, ElementSet{1}, Tuple{1}), Error);
}

TEST(Isolates, AgreesWithBruteForceAndIsMonotone) {
  for (const auto& entry : register_builtin_catalog()) {
    const auto& k = *entry.cls;
    for (const auto& m : entry.exhaustive(4)) {
      const ElementSet all = ElementSet::full(m.size());
      for (ElementSet a : subsets_by_size(all)) {
        for (Element b = 0; b < m.size(); ++b) {
          std::vector<ElementSet> isolating;
          for (ElementSet small : subsets_by_size(a)) {
            const bool got = isolates(k, m, a, small, Tuple{b});
            ASSERT_EQ(got, isolates_brute(k, m, a, small, Tuple{b})) << entry.name();
            if (got) isolating.push_back(small);
          }
          for (ElementSet small : isolating) {
            for (ElementSet bigger : subsets_by_size(a)) {
              if (small.is_subset_of(bigger)) {
                EXPECT_TRUE(isolates(k, m, a, bigger, Tuple{b})) << entry.name();
              }
            }
          }
        }
      }
    }
  }
}

TEST(IsolatingBase, SubtupleOfParameters) {
  auto cg = make_component_graph_class();
  auto g = testing::graph(5, {{0, 1}, {2, 3}});
  auto r = find_isolating_base(*cg, g, ElementSet{0, 2, 4}, Tuple{2});
  EXPECT_EQ(r.a0, (ElementSet{2}));
  EXPECT_EQ(r.a1, (ElementSet{2}));
  EXPECT_EQ(r.table.size(), 1u);
}

TEST(IsolatingBase, PathDistanceFromEnd) {
  auto cg = make_component_graph_class();
  auto r = find_isolating_base(*cg, path(5), ElementSet{0, 2, 4}, Tuple{1});
  EXPECT_EQ(r.a0, (ElementSet{0}));
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.table[0].tuple, Tuple{1});
  EXPECT_EQ(r.a1, (ElementSet{0}));
  EXPECT_TRUE(r.additions.empty());
}

TEST(IsolatingBase, FourCycleNeedsSecondParameter) {
  auto cg = make_component_graph_class();
  auto r = find_isolating_base(*cg, cycle(4), ElementSet{0, 1}, Tuple{3});
  EXPECT_EQ(r.a0, (ElementSet{0}));
  ASSERT_EQ(r.table.size(), 2u);
  EXPECT_EQ(r.table[0].tuple, Tuple{1});
  EXPECT_EQ(r.table[1].tuple, Tuple{3});
  EXPECT_NE(r.table[0].type_over_a, r.table[1].type_over_a);
  EXPECT_EQ(r.a1, (ElementSet{0, 1}));
  EXPECT_EQ(r.additions, (std::vector<Element>{1}));
}

TEST(IsolatingBase, OutOfClosure) {
  auto cg = make_component_graph_class();
  auto g = testing::graph(3, {{0, 1}});
  try {
    find_isolating_base(*cg, g, ElementSet{0}, Tuple{2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfClosure);
  }
}

TEST(IsolatingBase, SoundAndWithinBudgetOnCatalog) {
  for (const auto& entry : register_builtin_catalog()) {
    const auto& k = *entry.cls;
    for (const auto& m : entry.exhaustive(4)) {
      const ElementSet all = ElementSet::full(m.size());
      for (ElementSet a : subsets_by_size(all)) {
        const ElementSet cl = closure(k, m, a);
        for (Element b0 : cl) {
          for (Element b1 : cl) {
            const Tuple b{b0, b1};
            auto r = find_isolating_base(k, m, a, b);
            EXPECT_TRUE(r.a0.is_subset_of(r.a1));
            EXPECT_TRUE(r.a1.is_subset_of(a));
            EXPECT_LE(r.a1.size(), r.budget) << entry.name();
            EXPECT_TRUE(isolates_brute(k, m, a, r.a1, b)) << entry.name();
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace muaec
