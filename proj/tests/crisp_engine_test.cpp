#include <gtest/gtest.h>

#include "common.hpp"

using namespace fuzzybisim;
using testing_support::D;

namespace {
const EngineConfig kEfficient{};
const EngineConfig kBaseline{Strategy::baseline_fixpoint, false, nullptr};
} // namespace

TEST(CrispEngine, ExampleFlgPartition) {
  auto g = nfts_to_flg(testing_support::example_nfts());
  for (const auto &cfg : {kEfficient, kBaseline})
    EXPECT_EQ(greatest_crisp_bisim_partition_flg(g, cfg).to_text(&g.vertex_names()),
              "{{s1},{s2,s5},{s3,s4},{mu1},{mu2},{mu3}}");
}

TEST(CrispEngine, ExampleSystemPartition) {
  auto m = testing_support::example_nfts();
  for (const auto &cfg : {kEfficient, kBaseline})
    EXPECT_EQ(crisp_partition_system(m, cfg).to_text(&m.state_names()), "{{s1},{s2,s5},{s3,s4}}");
}

TEST(CrispEngine, EdgelessUniformGraphIsOneBlock) {
  Flg g({"x", "y", "z"}, {"p"}, {"r"}, {LabelSet{}, LabelSet{}, LabelSet{}}, {});
  EXPECT_EQ(greatest_crisp_bisim_partition_flg(g).block_count(), 1u);
}

TEST(CrispEngine, SelfLoopOnOneVertexSplits) {
  Flg g({"x", "y"}, {"p"}, {"r"}, {LabelSet{}, LabelSet{}}, {{0, 0, 0, D("0.5")}});
  for (const auto &cfg : {kEfficient, kBaseline})
    EXPECT_EQ(greatest_crisp_bisim_partition_flg(g, cfg).to_text(), "{{0},{1}}");
}

TEST(CrispEngine, EdgeDegreesMatter) {
  // x -r:0.5-> z and y -r:0.7-> z differ; the larger degree cannot be matched.
  Flg g({"x", "y", "z"}, {}, {"r"}, {LabelSet{}, LabelSet{}, LabelSet{}},
        {{0, 0, 2, D("0.5")}, {1, 0, 2, D("0.7")}});
  EXPECT_EQ(greatest_crisp_bisim_partition_flg(g).to_text(), "{{0},{1},{2}}");
}

TEST(CrispEngine, MaximumPerTargetBlockDecides) {
  // x has edges 0.5 and 0.9 into the block {z, w}, y only 0.9: bisimilar,
  // since every edge of x into that block is dominated by y's 0.9.
  Flg g({"x", "y", "z", "w"}, {}, {"r"}, {LabelSet{}, LabelSet{}, LabelSet{}, LabelSet{}},
        {{0, 0, 2, D("0.5")}, {0, 0, 3, D("0.9")}, {1, 0, 3, D("0.9")}});
  for (const auto &cfg : {kEfficient, kBaseline})
    EXPECT_EQ(greatest_crisp_bisim_partition_flg(g, cfg).to_text(), "{{0,1},{2,3}}");
}

TEST(CrispEngine, EmptyTransitionRelationKeepsAllStatesTogether) {
  auto m = testing_support::states_only({"x", "y", "z"});
  EXPECT_EQ(crisp_partition_system(m).to_text(&m.state_names()), "{{x,y,z}}");
}

TEST(CrispEngine, LabelsSeparateOtherwiseBisimilarStates) {
  auto m = testing_support::example_nfts();
  Nflts labelled(m, {"p"}, {LabelSet{}, LabelSet{{0, D("1")}}, LabelSet{}, LabelSet{}, LabelSet{}});
  auto p = crisp_partition_system(labelled);
  EXPECT_EQ(p, CrispPartition::from_equivalence(oracle::gfp_crisp_bisim_nfts(labelled)));
  auto names = m.state_names();
  EXPECT_EQ(p.to_text(&names).find("{s2,s5}"), std::string::npos);
}

TEST(CrispEngine, BlocksNeverMixStatesAndDistributions) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto m = bench::generate(testing_support::small_spec(seed, 8));
    auto g = nflts_to_flg(m);
    auto p = greatest_crisp_bisim_partition_flg(g);
    for (const auto &b : p.blocks()) {
      bool state = b.front() < m.state_count();
      for (auto x : b)
        EXPECT_EQ(x < m.state_count(), state);
    }
  }
}

TEST(CrispEngine, StrategiesAgreeOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto m = bench::generate(testing_support::small_spec(seed, 8));
    auto g = nflts_to_flg(m);
    ASSERT_EQ(greatest_crisp_bisim_partition_flg(g, kEfficient),
              greatest_crisp_bisim_partition_flg(g, kBaseline))
        << "seed " << seed;
  }
}

TEST(CrispEngine, LongChainsRefineCompletely) {
  // a chain whose end differs splits back one block per step
  const std::size_t n = 200;
  std::vector<std::string> names;
  std::vector<LabelSet> labels(n);
  std::vector<FlgEdge> edges;
  for (std::uint32_t v = 0; v < n; ++v) {
    names.push_back("v" + std::to_string(v));
    if (v + 1 < n)
      edges.push_back({v, 0, v + 1, Degree::one()});
  }
  labels[n - 1] = LabelSet{{0, Degree::one()}};
  Flg g(names, {"p"}, {"r"}, labels, edges);
  EXPECT_EQ(greatest_crisp_bisim_partition_flg(g).block_count(), n);
}

TEST(CrispEngine, VerboseTracePrintsFlgPartition) {
  std::ostringstream log;
  EngineConfig cfg;
  cfg.verbose = true;
  cfg.log = &log;
  crisp_partition_system(testing_support::example_nfts(), cfg);
  EXPECT_NE(log.str().find("{{s1},{s2,s5},{s3,s4},{mu1},{mu2},{mu3}}"), std::string::npos);
}
