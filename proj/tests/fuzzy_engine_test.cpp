#include <gtest/gtest.h>

#include "common.hpp"

using namespace fuzzybisim;
using testing_support::D;

namespace {
const EngineConfig kEfficient{};
const EngineConfig kBaseline{Strategy::baseline_fixpoint, false, nullptr};
} // namespace

TEST(FuzzyEngine, ExampleFlgPartition) {
  auto g = nfts_to_flg(testing_support::example_nfts());
  for (const auto &cfg : {kEfficient, kBaseline})
    EXPECT_EQ(greatest_fuzzy_bisim_cfp_flg(g, cfg).to_text(&g.vertex_names()),
              "{{{s1}:1,{s2,s5}:1}:0.4,{s3,s4}:1,{{{mu1}:1,{mu3}:1}:0.5,{mu2}:1}:0.4}:0");
}

TEST(FuzzyEngine, ExampleSystemPartitionAndTable) {
  auto m = testing_support::example_nfts();
  for (const auto &cfg : {kEfficient, kBaseline}) {
    auto c = fuzzy_partition_system(m, cfg);
    EXPECT_EQ(c.to_text(&m.state_names()), "{{{s1}:1,{s2,s5}:1}:0.4,{s3,s4}:1}:0");
    EXPECT_EQ(cfp_to_relation(c), testing_support::example_fuzzy_table());
  }
}

TEST(FuzzyEngine, EdgelessUniformGraphIsOneCrispBlock) {
  Flg g({"x", "y"}, {"p"}, {"r"}, {LabelSet{}, LabelSet{}}, {});
  auto c = greatest_fuzzy_bisim_cfp_flg(g);
  EXPECT_TRUE(c.is_crisp());
  EXPECT_EQ(c.to_text(), "{0,1}:1");
}

TEST(FuzzyEngine, LabelBiresiduumCapsTheDegree) {
  Flg g({"x", "y"}, {"p"}, {"r"}, {LabelSet{{0, D("0.3")}}, LabelSet{{0, D("0.9")}}}, {});
  for (const auto &cfg : {kEfficient, kBaseline})
    EXPECT_EQ(greatest_fuzzy_bisim_cfp_flg(g, cfg).to_text(), "{{0}:1,{1}:1}:0.3");
}

TEST(FuzzyEngine, EmptyTransitionRelationReturnsWholeTree) {
  auto m = testing_support::states_only({"x", "y", "z"});
  EXPECT_EQ(fuzzy_partition_system(m).to_text(&m.state_names()), "{x,y,z}:1");
}

TEST(FuzzyEngine, DistinctCrispLabelsWithoutTransitionsAreDiscrete) {
  auto base = testing_support::states_only({"x", "y", "z"});
  Nflts m(base, {"p", "q", "r"},
          {LabelSet{{0, D("1")}}, LabelSet{{1, D("1")}}, LabelSet{{2, D("1")}}});
  auto c = fuzzy_partition_system(m);
  EXPECT_EQ(c.to_text(&base.state_names()), "{{x}:1,{y}:1,{z}:1}:0");
  EXPECT_EQ(cfp_to_relation(c), oracle::gfp_fuzzy_bisim_nfts(m));
}

TEST(FuzzyEngine, SingleStateSubblockIsReturnedDirectly) {
  // one state with a self transition: the state part of the tree is one block
  NftsBuilder b;
  auto s = b.add_state("s");
  auto a = b.add_action("a");
  b.add_transition(s, a, Distribution{{s, D("0.5")}});
  auto m = std::move(b).build();
  auto c = fuzzy_partition_system(m);
  EXPECT_EQ(c.to_text(&m.state_names()), "{s}:1");
}

TEST(FuzzyEngine, TopLevelSplitsStatesFromDistributions) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto m = bench::generate(testing_support::small_spec(seed, 6));
    if (m.base().transitions().empty())
      continue;
    auto g = nflts_to_flg(m);
    auto c = greatest_fuzzy_bisim_cfp_flg(g);
    EXPECT_EQ(c.root().degree, Degree::zero());
    for (auto child : c.root().children) {
      auto elems = c.subtree(child).elements();
      bool state = elems.front() < m.state_count();
      for (auto x : elems)
        EXPECT_EQ(x < m.state_count(), state);
    }
  }
}

TEST(FuzzyEngine, StrategiesAgreeOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto m = bench::generate(testing_support::small_spec(seed, 6));
    auto g = nflts_to_flg(m);
    ASSERT_EQ(greatest_fuzzy_bisim_cfp_flg(g, kEfficient),
              greatest_fuzzy_bisim_cfp_flg(g, kBaseline))
        << "seed " << seed;
  }
}

TEST(FuzzyEngine, CrispPartitionRefinesOneCut) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto m = bench::generate(testing_support::small_spec(seed, 7));
    auto crisp = crisp_partition_system(m).to_relation();
    auto cut = cfp_to_relation(fuzzy_partition_system(m)).cut(Degree::one());
    EXPECT_TRUE(crisp.subset_of(cut)) << "seed " << seed;
  }
}

TEST(FuzzyEngine, OneCutCanBeCoarserThanCrispPartition) {
  // x, x2 reach differently labelled states through 0.5 edges
  NftsBuilder b;
  auto x = b.add_state("x"), x2 = b.add_state("x2"), y = b.add_state("y"), y2 = b.add_state("y2");
  auto a = b.add_action("a");
  b.add_transition(x, a, Distribution{{y, D("0.5")}});
  b.add_transition(x2, a, Distribution{{y2, D("0.5")}});
  Nflts m(std::move(b).build(), {"p"},
          {LabelSet{}, LabelSet{}, LabelSet{{0, D("0.5")}}, LabelSet{{0, D("1")}}});
  auto fuzzy = cfp_to_relation(fuzzy_partition_system(m));
  EXPECT_EQ(fuzzy, oracle::gfp_fuzzy_bisim_nfts(m));
  EXPECT_EQ(fuzzy(0, 1), Degree::one());
  EXPECT_EQ(crisp_partition_system(m).to_text(&m.base().state_names()), "{{x},{x2},{y},{y2}}");
  EXPECT_FALSE(oracle::is_crisp_bisim_nfts(fuzzy.cut(Degree::one()), m).holds);
}

TEST(FuzzyEngine, EdgeDegreeCapsTheSuccessorRequirement) {
  // x -r:0.7-> u and y -r:0.7-> w with Z(u,w) = 0.5 from the labels:
  // Z(x,y) = 0.5 since the 0.7 edges need successors related at 0.7.
  Flg g({"x", "y", "u", "w"}, {"p"}, {"r"},
        {LabelSet{}, LabelSet{}, LabelSet{{0, D("0.5")}}, LabelSet{{0, D("0.9")}}},
        {{0, 0, 2, D("0.7")}, {1, 0, 3, D("0.7")}});
  auto c = greatest_fuzzy_bisim_cfp_flg(g);
  EXPECT_EQ(c, greatest_fuzzy_bisim_cfp_flg(g, kBaseline));
  EXPECT_EQ(c.degree(0, 1), D("0.5"));
}

TEST(FuzzyEngine, WeakEdgesOnlyNeedWeaklyRelatedSuccessors) {
  // the 0.5 edges are satisfied by Z(u,w) = 0.5, so Z(x,y) = 1
  Flg g({"x", "y", "u", "w"}, {"p"}, {"r"},
        {LabelSet{}, LabelSet{}, LabelSet{{0, D("0.5")}}, LabelSet{{0, D("1")}}},
        {{0, 0, 2, D("0.5")}, {1, 0, 3, D("0.5")}});
  auto c = greatest_fuzzy_bisim_cfp_flg(g);
  EXPECT_EQ(c, greatest_fuzzy_bisim_cfp_flg(g, kBaseline));
  EXPECT_EQ(c.degree(0, 1), Degree::one());
  EXPECT_EQ(c.degree(2, 3), D("0.5"));
}

TEST(FuzzyEngine, VerboseTraceListsLevels) {
  std::ostringstream log;
  EngineConfig cfg;
  cfg.verbose = true;
  cfg.log = &log;
  fuzzy_partition_system(testing_support::example_nfts(), cfg);
  EXPECT_NE(log.str().find("level 0.5"), std::string::npos);
}
