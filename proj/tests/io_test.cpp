#include <gtest/gtest.h>

#include "common.hpp"

using namespace fuzzybisim;
using testing_support::D;

namespace {

std::string sample(const std::string &name) {
  return io::read_file(std::string(FUZZYBISIM_SAMPLES) + "/" + name);
}

std::string error_of(const std::string &text) {
  try {
    io::parse_model(text, "doc");
  } catch (const ModelError &e) {
    return e.what();
  }
  return "";
}

const char *kHeader = R"({"format_version":"1","kind":"nfts","states":["x","y"],"actions":["a"],)";

} // namespace

TEST(ModelIo, SampleLoadsAsExample) {
  auto m = io::parse_model(sample("example.json"));
  EXPECT_EQ(m.state_count(), 5u);
  EXPECT_EQ(m.base().action_count(), 2u);
  EXPECT_EQ(m.base().transitions().size(), 6u);
  EXPECT_EQ(m.base().distributions().size(), 3u);
  EXPECT_EQ(m.base(), testing_support::example_nfts());
  EXPECT_EQ(io::parse_model(sample("example.txt")), m);
}

TEST(ModelIo, InlineDistributionsAreDeduplicated) {
  auto m = io::parse_model(sample("labeled.json"));
  EXPECT_EQ(m.base().distributions().size(), 3u);
  EXPECT_EQ(m.label_names(), std::vector<std::string>{"p"});
  EXPECT_EQ(m.label(1)(0), Degree::one());
}

TEST(ModelIo, JsonRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto m = bench::generate(testing_support::small_spec(seed, 8));
    EXPECT_EQ(io::parse_model(io::to_json(m)), m) << seed;
    EXPECT_EQ(io::parse_model(io::to_text(m)), m) << seed;
  }
}

TEST(ModelIo, DegreeOutOfRangeNamesTheField) {
  auto err = error_of(std::string(kHeader) +
                      R"("transitions":[{"from":"x","action":"a","to":{"y":"1.2"}}]})");
  EXPECT_NE(err.find("transitions[0].to.y"), std::string::npos) << err;
  EXPECT_NE(err.find("out of range"), std::string::npos) << err;
}

TEST(ModelIo, UnknownReferencesAreReported) {
  auto err = error_of(std::string(kHeader) +
                      R"("transitions":[{"from":"z","action":"a","to":{"y":"0.5"}}]})");
  EXPECT_NE(err.find("unknown state \"z\""), std::string::npos) << err;
  err = error_of(std::string(kHeader) +
                 R"("transitions":[{"from":"x","action":"c","to":{"y":"0.5"}}]})");
  EXPECT_NE(err.find("unknown action"), std::string::npos) << err;
  err = error_of(std::string(kHeader) + R"("transitions":[{"from":"x","action":"a","to":"nu"}]})");
  EXPECT_NE(err.find("unknown distribution"), std::string::npos) << err;
}

TEST(ModelIo, NumbersAreNotDegrees) {
  auto err = error_of(std::string(kHeader) +
                      R"("transitions":[{"from":"x","action":"a","to":{"y":0.5}}]})");
  EXPECT_NE(err.find("decimal strings"), std::string::npos) << err;
}

TEST(ModelIo, StructuralErrors) {
  EXPECT_NE(error_of("{").find("malformed JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"format_version":"2"})").find("unsupported"), std::string::npos);
  EXPECT_NE(error_of(std::string(kHeader) + R"("transitions":[],"bogus":1})").find("bogus"),
            std::string::npos);
  EXPECT_NE(error_of(std::string(kHeader) + R"("transitions":[],"labels":["p"]})").find("labels"),
            std::string::npos);
  EXPECT_NE(error_of(std::string(kHeader) +
                     R"("distributions":{"nu":{"y":"0.5"}},"transitions":[]})")
                .find("not used"),
            std::string::npos);
}

TEST(ModelIo, ReservedNamesRejectedWhenTransformed) {
  auto m = io::parse_model(R"({"format_version":"1","kind":"nflts","states":["x"],
      "actions":["a"],"labels":["@state"],"transitions":[]})");
  EXPECT_THROW(nflts_to_flg(m), ModelError);
}

TEST(ModelIo, TextFormatErrorsCarryLineNumbers) {
  auto err = error_of("states x y\nactions a\ntrans x a y:2\n");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;
  err = error_of("states x\nactions a\nfrobnicate\n");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;
  err = error_of("actions a\n");
  EXPECT_NE(err.find("line 1"), std::string::npos) << err;
  err = error_of("kind nfts\nstates x\nactions a\nlabels p\n");
  EXPECT_NE(err.find("cannot carry labels"), std::string::npos) << err;
}

TEST(ModelIo, TextFormatInlineAndComments) {
  auto m = io::parse_model("# c\nkind nflts\nstates x y # two\nactions a\nlabels p\n"
                           "trans x a y:0.5 x:1\nlabel y p:0.25\n");
  EXPECT_EQ(m.base().distributions().size(), 1u);
  EXPECT_EQ(m.base().distribution(0)(0), Degree::one());
  EXPECT_EQ(m.label(1)(0), D("0.25"));
}

TEST(RelationIo, ParsesPairsAndDegrees) {
  auto m = io::parse_model(sample("example.json"));
  auto r = io::parse_relation(sample("example_relation.txt"), m);
  EXPECT_EQ(r, testing_support::example_fuzzy_table());
  EXPECT_THROW(io::parse_relation("s1 s9\n", m), ModelError);
  EXPECT_THROW(io::parse_relation("s1 s2 1.5\n", m), ModelError);
  EXPECT_THROW(io::parse_relation("s1\n", m), ModelError);
}

TEST(RelationIo, TextRendering) {
  FuzzyRelation r(2, 2);
  r.set(0, 1, D("0.5"));
  std::vector<std::string> n{"a", "b"};
  EXPECT_EQ(io::fuzzy_relation_text(r, n, n), "a b 0.5\n");
  EXPECT_EQ(io::crisp_relation_text(r.cut(D("0.5")), n, n), "a b\n");
}
