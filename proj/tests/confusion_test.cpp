#include "hcm/confusion.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hcm/error.hpp"
#include "oracle.hpp"
#include "random_instances.hpp"

namespace {

using fixtures::path;
using hcm::HierarchicalConfusion;

HierarchicalConfusion hc(std::uint64_t tp, std::uint64_t tn, std::uint64_t fp, std::uint64_t fn) {
  return {tp, tn, fp, fn};
}

// Expected values below were produced by oracle::eq4 / oracle::record before
// being frozen here.
TEST(ConfuseSplTree, T1Fixtures) {
  auto t = fixtures::t1();
  EXPECT_EQ(hcm::confuse_spl_tree(t, path(t, {"R", "A", "A1", "A1a"}),
                                  path(t, {"R", "A", "A1", "A1a"})),
            hc(3, 3, 0, 0));
  EXPECT_EQ(hcm::confuse_spl_tree(t, path(t, {"R", "A", "A1", "A1a"}), path(t, {"R", "A", "A2"})),
            hc(1, 2, 1, 2));
  EXPECT_EQ(hcm::confuse_spl_tree(t, path(t, {"R", "B", "B1"}), path(t, {"R", "A", "A1"})),
            hc(0, 4, 2, 2));
}

TEST(ConfuseSplTree, RootOnlyPrediction) {
  auto t = fixtures::t1();
  auto c = hcm::confuse_spl_tree(t, path(t, {"R", "A", "A1"}), path(t, {"R"}));
  EXPECT_EQ(c.tp, 0u);
  EXPECT_EQ(c.fp, 0u);
  EXPECT_EQ(c.fn, 2u);
}

TEST(ConfuseSplTree, RejectsInvalidPaths) {
  auto t = fixtures::t1();
  try {
    hcm::confuse_spl_tree(t, path(t, {"A", "A1"}), path(t, {"R", "A"}));
    FAIL();
  } catch (const hcm::Error& e) {
    EXPECT_EQ(e.code(), hcm::ErrorCode::PathNotInTaxonomy);
  }
  EXPECT_THROW(hcm::confuse_spl_tree(t, path(t, {"R", "A"}), path(t, {"R", "A1"})), hcm::Error);
}

TEST(ConfuseSpl, DiamondFixtures) {
  auto t = fixtures::d1();
  auto w = t.true_paths(t.index_of("C"));
  EXPECT_EQ(hcm::confuse_spl(t, w, path(t, {"R", "B", "C"})), hc(2, 1, 0, 0));
  EXPECT_EQ(hcm::confuse_spl(t, w, path(t, {"R", "A", "C"})), hc(2, 1, 0, 0));
  EXPECT_EQ(w[hcm::select_benevolent(w, path(t, {"R", "B", "C"}))], path(t, {"R", "B", "C"}));
}

TEST(ConfuseSpl, SinglePathReducesToTree) {
  auto t = fixtures::t1();
  auto p = path(t, {"R", "B", "B2"});
  std::vector<hcm::AllocationPath> w{p};
  auto c = hcm::confuse_spl(t, w, p);
  EXPECT_EQ(c.fp, 0u);
  EXPECT_EQ(c.fn, 0u);
  EXPECT_EQ(c.tp, p.size() - 1);
}

TEST(ConfuseSpl, EmptyTruePaths) {
  auto t = fixtures::t1();
  try {
    hcm::confuse_spl(t, {}, path(t, {"R", "A"}));
    FAIL();
  } catch (const hcm::Error& e) {
    EXPECT_EQ(e.code(), hcm::ErrorCode::EmptyTruePaths);
  }
}

TEST(ConfuseRecord, T1Fixtures) {
  auto t = fixtures::t1();
  const auto a1 = t.index_of("A1");
  const auto b1 = t.index_of("B1");
  EXPECT_EQ(hcm::confuse_record(t, {{a1, b1}},
                                {{path(t, {"R", "A", "A1"}), path(t, {"R", "A", "A2"})}}),
            hc(2, 8, 2, 2));
  EXPECT_EQ(hcm::confuse_record(t, {{a1, b1}}, {{path(t, {"R", "A", "A1"})}}), hc(2, 4, 0, 2));
  EXPECT_EQ(hcm::confuse_record(t, {{a1}},
                                {{path(t, {"R", "A", "A1"}), path(t, {"R", "B", "B1"})}}),
            hc(2, 4, 2, 0));
}

TEST(ConfuseRecord, Errors) {
  auto t = fixtures::t1();
  auto code = [&](const hcm::GroundTruth& g, const hcm::PredictionSet& p) {
    try {
      hcm::confuse_record(t, g, p);
    } catch (const hcm::Error& e) {
      return e.code();
    }
    return hcm::ErrorCode::EmptyEdgeList;
  };
  EXPECT_EQ(code({}, {{path(t, {"R", "A"})}}), hcm::ErrorCode::EmptyTruth);
  EXPECT_EQ(code({{t.index_of("A")}}, {}), hcm::ErrorCode::EmptyPredictions);
  EXPECT_EQ(code({{t.index_of("A")}}, {{path(t, {"R", "B1"})}}),
            hcm::ErrorCode::PathNotInTaxonomy);
}

TEST(ConfuseRecord, StepTwoValuesAreNotRefreshed) {
  // Both predictions score m against the full truth set; the first in input
  // order among the m=3 predictions claims A1, so [R,A,A1,A1b] is visited
  // second and must settle for B1.
  auto t = fixtures::t1();
  const auto a1 = t.index_of("A1");
  const auto b1 = t.index_of("B1");
  auto p1 = path(t, {"R", "A", "A1"});
  auto p2 = path(t, {"R", "A", "A1", "A1b"});
  auto got = hcm::confuse_record(t, {{a1, b1}}, {{p1, p2}});
  oracle::Graph g(fixtures::t1_edges());
  auto want = oracle::record(g, {"A1", "B1"}, {testgen::labels_of(t, p1), testgen::labels_of(t, p2)});
  EXPECT_EQ(got, hc(want.tp, want.tn, want.fp, want.fn));
}

TEST(Aggregate, Basics) {
  EXPECT_EQ(hcm::aggregate({}), hc(0, 0, 0, 0));
  std::vector<HierarchicalConfusion> one{hc(1, 2, 3, 4)};
  EXPECT_EQ(hcm::aggregate(one), hc(1, 2, 3, 4));
  std::vector<HierarchicalConfusion> two{hc(1, 0, 0, 0), hc(0, 1, 1, 1)};
  EXPECT_EQ(hcm::aggregate(two), hc(1, 1, 1, 1));
}

TEST(Aggregate, PermutationInvariant) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::uint64_t> d(0, 1000);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<HierarchicalConfusion> v(1 + iter % 17);
    for (auto& c : v) c = hc(d(rng), d(rng), d(rng), d(rng));
    auto sum = hcm::aggregate(v);
    std::shuffle(v.begin(), v.end(), rng);
    ASSERT_EQ(hcm::aggregate(v), sum);
    // Associativity: split anywhere and add the halves.
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::vector<HierarchicalConfusion> left(v.begin(), mid), right(mid, v.end());
    ASSERT_EQ(hcm::aggregate(left) + hcm::aggregate(right), sum);
  }
}

TEST(ConfusionProperties, TreeSetsDisjointAndCountsConsistent) {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 300; ++iter) {
    testgen::Shape shape;
    shape.max_nodes = 80;
    auto rt = testgen::random_taxonomy(rng, shape);
    auto t = hcm::Taxonomy::build(rt.edges);
    oracle::Graph g(rt.edges);
    auto truth = testgen::random_path(rng, t, true);
    auto pred = testgen::random_path(rng, t, true);
    auto sets = oracle::eq4_sets(g, testgen::labels_of(t, truth), testgen::labels_of(t, pred));
    const std::vector<const oracle::LabelSet*> all{&sets.tp, &sets.tn_neighbors,
                                                   &sets.tn_descendants, &sets.fp, &sets.fn};
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j)
        ASSERT_TRUE(oracle::meet(*all[i], *all[j]).empty()) << i << " " << j;
    }
    auto c = hcm::confuse_spl_tree(t, truth, pred);
    ASSERT_EQ(c.tp + c.fp, pred.size() - 1);
    ASSERT_EQ(c.tp + c.fn, truth.size() - 1);
    ASSERT_LE(c.tp + c.tn + c.fp + c.fn, t.size());
  }
}

TEST(ConfusionProperties, BenevolentChoiceMaximizesCommonPath) {
  std::mt19937 rng(47);
  int dag_cases = 0;
  for (int iter = 0; iter < 400; ++iter) {
    testgen::Shape shape;
    shape.max_nodes = 60;
    shape.max_depth = 5;
    shape.extra_edges = 4 + iter % 6;
    auto t = hcm::Taxonomy::build(testgen::random_taxonomy(rng, shape).edges);
    auto cls = testgen::random_classes(rng, t, 1, false);
    if (cls.empty()) continue;
    auto w = t.true_paths(cls.front());
    if (w.size() > 1) ++dag_cases;
    auto pred = testgen::random_path(rng, t, false);
    const auto& chosen = w[hcm::select_benevolent(w, pred)];
    for (const auto& alt : w) {
      const auto lc = hcm::common_path_length(chosen, pred);
      const auto la = hcm::common_path_length(alt, pred);
      ASSERT_GE(lc, la);
      if (lc == la) ASSERT_LE(chosen, alt);
    }
    ASSERT_EQ(hcm::confuse_spl(t, w, pred), hcm::confuse_spl_tree(t, chosen, pred));
  }
  EXPECT_GT(dag_cases, 50);
}

// Maximizing the common path does not always minimize fp + fn: a longer
// alternative that shares a longer prefix can carry more false negatives.
TEST(ConfusionProperties, LongestCommonPathCanCostMoreErrors) {
  auto t = hcm::Taxonomy::build(fixtures::Edges{{"R", "A"}, {"A", "B"}, {"B", "C"}, {"C", "H"},
                                                {"H", "E"}, {"R", "D"}, {"D", "E"}, {"A", "G"}});
  auto w = t.true_paths(t.index_of("E"));
  auto pred = path(t, {"R", "A", "G"});
  EXPECT_EQ(w[hcm::select_benevolent(w, pred)], path(t, {"R", "A", "B", "C", "H", "E"}));
  EXPECT_EQ(hcm::confuse_spl(t, w, pred), hc(1, 1, 1, 4));
  EXPECT_EQ(hcm::confuse_spl_tree(t, path(t, {"R", "D", "E"}), pred), hc(0, 3, 2, 2));
}

TEST(ConfusionProperties, PerfectPredictionHasNoErrors) {
  std::mt19937 rng(53);
  for (int iter = 0; iter < 300; ++iter) {
    testgen::Shape shape;
    shape.max_nodes = 60;
    shape.extra_edges = iter % 5;
    auto t = hcm::Taxonomy::build(testgen::random_taxonomy(rng, shape).edges);
    auto classes = testgen::random_classes(rng, t, 1 + iter % 4, iter % 2 == 0);
    if (classes.empty()) continue;
    hcm::PredictionSet preds;
    for (auto c : classes) {
      auto w = t.true_paths(c);
      std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
      preds.paths.push_back(w[pick(rng)]);
    }
    std::shuffle(preds.paths.begin(), preds.paths.end(), rng);
    auto c = hcm::confuse_record(t, {classes}, preds);
    ASSERT_EQ(c.fp, 0u);
    ASSERT_EQ(c.fn, 0u);
  }
}

}  // namespace
