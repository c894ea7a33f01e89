#include <random>

#include <gtest/gtest.h>

#include "common.hpp"

using namespace fuzzybisim;
using testing_support::D;

namespace {

FuzzyRelation seven_table() {
  const char *rows[7][7] = {{"1", "0.4", "0.4", "0.4", "0.1", "0.1", "0"},
                            {"0.4", "1", "0.6", "0.6", "0.1", "0.1", "0"},
                            {"0.4", "0.6", "1", "1", "0.1", "0.1", "0"},
                            {"0.4", "0.6", "1", "1", "0.1", "0.1", "0"},
                            {"0.1", "0.1", "0.1", "0.1", "1", "0.3", "0"},
                            {"0.1", "0.1", "0.1", "0.1", "0.3", "1", "0"},
                            {"0", "0", "0", "0", "0", "0", "1"}};
  FuzzyRelation r(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      r.set(i, j, D(rows[i][j]));
  return r;
}

// Random fuzzy equivalence: the relation of a random tree with random
// increasing degrees.
CompactFuzzyPartition random_cfp(std::mt19937_64 &rng, std::vector<std::uint32_t> elems,
                                 std::uint64_t floor_units) {
  if (elems.size() == 1 || rng() % 3 == 0)
    return CompactFuzzyPartition::crisp_block(elems);
  std::shuffle(elems.begin(), elems.end(), rng);
  const std::size_t parts = 2 + rng() % std::min<std::size_t>(3, elems.size() - 1);
  const std::uint64_t step = (Degree::kScale - floor_units) / 4;
  const std::uint64_t units = floor_units + 1 + rng() % step;
  std::vector<CompactFuzzyPartition> subs;
  std::size_t begin = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    std::size_t end = p + 1 == parts ? elems.size() : begin + 1 + rng() % (elems.size() - begin - (parts - p - 1));
    subs.push_back(random_cfp(rng, {elems.begin() + begin, elems.begin() + end}, units));
    begin = end;
  }
  return CompactFuzzyPartition::fuzzy_block(Degree::from_units(units), std::move(subs));
}

} // namespace

TEST(CrispPartition, CanonicalOrderAndText) {
  auto p = CrispPartition::from_block_ids({2, 0, 1, 1, 0});
  EXPECT_EQ(p.to_text(), "{{0},{1,4},{2,3}}");
  std::vector<std::string> names{"s1", "s2", "s3", "s4", "s5"};
  EXPECT_EQ(p.to_text(&names), "{{s1},{s2,s5},{s3,s4}}");
  EXPECT_EQ(p, CrispPartition({{3, 2}, {4, 1}, {0}}));
  EXPECT_EQ(p.element_count(), 5u);
}

TEST(CrispPartition, RelationRoundTrip) {
  auto p = CrispPartition::from_block_ids({0, 1, 0, 2, 1});
  auto r = p.to_relation();
  EXPECT_TRUE(is_equivalence(r));
  EXPECT_EQ(CrispPartition::from_equivalence(r), p);
}

TEST(CrispPartition, RejectsOverlapAndEmptyBlocks) {
  EXPECT_THROW(CrispPartition({{0, 1}, {1}}), PartitionError);
  EXPECT_THROW(CrispPartition({{0}, {}}), PartitionError);
}

TEST(CompactFuzzyPartition, SevenElementTableGivesNestedStructure) {
  auto c = cfp_from_relation(seven_table());
  auto names = testing_support::names_of(7, "x");
  EXPECT_EQ(c.to_text(&names),
            "{{{{x1}:1,{{x2}:1,{x3,x4}:1}:0.6}:0.4,{{x5}:1,{x6}:1}:0.3}:0.1,{x7}:1}:0");
  EXPECT_EQ(cfp_to_relation(c), seven_table());
}

TEST(CompactFuzzyPartition, DegreeQueryUsesLowestCommonBlock) {
  auto c = cfp_from_relation(seven_table());
  EXPECT_EQ(c.degree(2, 3), Degree::one());
  EXPECT_EQ(c.degree(1, 3), D("0.6"));
  EXPECT_EQ(c.degree(0, 3), D("0.4"));
  EXPECT_EQ(c.degree(4, 5), D("0.3"));
  EXPECT_EQ(c.degree(0, 5), D("0.1"));
  EXPECT_EQ(c.degree(6, 0), Degree::zero());
  EXPECT_EQ(c.degree(6, 6), Degree::one());
  EXPECT_THROW(c.degree(7, 0), PartitionError);
}

TEST(CompactFuzzyPartition, RejectsNonEquivalences) {
  FuzzyRelation r(2, 2);
  r.set(0, 0, Degree::one());
  EXPECT_THROW(cfp_from_relation(r), PartitionError); // not reflexive
  r.set(1, 1, Degree::one());
  r.set(0, 1, D("0.5"));
  EXPECT_THROW(cfp_from_relation(r), PartitionError); // not symmetric
  FuzzyRelation t(3, 3);
  for (int i = 0; i < 3; ++i)
    t.set(i, i, Degree::one());
  t.set(0, 1, D("0.8"));
  t.set(1, 0, D("0.8"));
  t.set(1, 2, D("0.8"));
  t.set(2, 1, D("0.8"));
  try {
    cfp_from_relation(t);
    FAIL() << "expected a transitivity failure";
  } catch (const PartitionError &e) {
    EXPECT_NE(std::string(e.what()).find("transitivity"), std::string::npos);
  }
}

TEST(CompactFuzzyPartition, ValidatesStructure) {
  using Node = CompactFuzzyPartition::Node;
  // fuzzy block with a single subblock
  std::vector<Node> one_child(2);
  one_child[0].degree = D("0.5");
  one_child[0].children = {1};
  one_child[1].degree = Degree::one();
  one_child[1].elements = {0};
  EXPECT_THROW(CompactFuzzyPartition{one_child}, PartitionError);
  // crisp block below 1
  std::vector<Node> low(1);
  low[0].degree = D("0.5");
  low[0].elements = {0};
  EXPECT_THROW(CompactFuzzyPartition{low}, PartitionError);
  // degrees must grow towards the leaves
  auto inner = CompactFuzzyPartition::fuzzy_block(
      D("0.3"), {CompactFuzzyPartition::crisp_block({0}), CompactFuzzyPartition::crisp_block({1})});
  EXPECT_THROW(CompactFuzzyPartition::fuzzy_block(
                   D("0.5"), {inner, CompactFuzzyPartition::crisp_block({2})}),
               PartitionError);
  // elements must be disjoint
  EXPECT_THROW(CompactFuzzyPartition::fuzzy_block(D("0.5"),
                                                  {CompactFuzzyPartition::crisp_block({0}),
                                                   CompactFuzzyPartition::crisp_block({0})}),
               PartitionError);
}

TEST(CompactFuzzyPartition, ParseRoundTrip) {
  auto names = testing_support::names_of(7, "x");
  auto c = cfp_from_relation(seven_table());
  auto resolve = [&](const std::string &n) {
    return static_cast<std::uint32_t>(std::find(names.begin(), names.end(), n) - names.begin());
  };
  auto back = parse_cfp(c.to_text(&names), resolve);
  EXPECT_EQ(back, c);
  EXPECT_THROW(parse_cfp("{{x1}:1", resolve), PartitionError);
  EXPECT_THROW(parse_cfp("{x1}:0.5", resolve), PartitionError);
}

TEST(CompactFuzzyPartition, SubblocksAndAnyElement) {
  auto c = cfp_from_relation(seven_table());
  auto subs = c.subblocks();
  ASSERT_EQ(subs.size(), 2u);
  EXPECT_EQ(subs[0].root().degree, D("0.1"));
  EXPECT_EQ(subs[1].elements(), std::vector<std::uint32_t>{6});
  EXPECT_EQ(c.any_element(c.root().children[1]), 6u);
  EXPECT_EQ(c.all_elements().size(), 7u);
}

TEST(CompactFuzzyPartition, RandomRelationsRoundTrip) {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::uint32_t> elems(n);
    for (std::size_t i = 0; i < n; ++i)
      elems[i] = static_cast<std::uint32_t>(i);
    auto c = random_cfp(rng, elems, 0);
    auto r = cfp_to_relation(c);
    EXPECT_TRUE(relation_laws(r).all());
    EXPECT_EQ(cfp_from_relation(r), c);
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        ASSERT_EQ(c.degree(x, y), r(x, y));
  }
}

TEST(Lca, MatchesNaiveAncestorWalk) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t n = 1 + rng() % 60;
    std::vector<std::vector<std::uint32_t>> children(n);
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::uint32_t> depth(n, 0);
    for (std::uint32_t v = 1; v < n; ++v) {
      auto p = static_cast<std::uint32_t>(rng() % v);
      children[p].push_back(v);
      parent[v] = p;
      depth[v] = depth[p] + 1;
    }
    EulerTourLca lca(children, 0);
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t a = u, b = v;
        while (a != b) {
          if (depth[a] >= depth[b])
            a = static_cast<std::uint32_t>(parent[a]);
          else
            b = static_cast<std::uint32_t>(parent[b]);
        }
        ASSERT_EQ(lca.lca(u, v), a);
      }
  }
}

TEST(Relation, LawsReportFailures) {
  FuzzyRelation r = FuzzyRelation::from_crisp(CrispRelation::identity(3));
  EXPECT_TRUE(relation_laws(r).all());
  r.set(0, 1, D("0.5"));
  auto laws = relation_laws(r);
  EXPECT_FALSE(laws.symmetric);
  EXPECT_TRUE(laws.reflexive);
  CrispRelation c(2, 2);
  EXPECT_FALSE(is_equivalence(c));
}

TEST(Relation, CutAndConverse) {
  FuzzyRelation r(2, 3);
  r.set(0, 2, D("0.5"));
  r.set(1, 0, Degree::one());
  auto cut = r.cut(Degree::one());
  EXPECT_TRUE(cut.contains(1, 0));
  EXPECT_FALSE(cut.contains(0, 2));
  EXPECT_EQ(r.converse()(2, 0), D("0.5"));
  EXPECT_EQ(r.converse().converse(), r);
  EXPECT_EQ(cut.converse().rows(), 3u);
}
