#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "common.hpp"
#include "fuzzybisim/cli.hpp"

using namespace fuzzybisim;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string &name) { return std::string(FUZZYBISIM_SAMPLES) + "/" + name; }

std::string temp_file(const std::string &name, const std::string &content) {
  auto path = std::filesystem::temp_directory_path() / ("fbisim_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

} // namespace

TEST(Cli, CrispPartition) {
  auto r = run({"crisp-partition", sample("example.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{{s1},{s2,s5},{s3,s4}}\n");
}

TEST(Cli, FuzzyPartition) {
  auto r = run({"fuzzy-partition", sample("example.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{{{s1}:1,{s2,s5}:1}:0.4,{s3,s4}:1}:0\n");
}

TEST(Cli, Degree) {
  auto r = run({"degree", sample("example.json"), "s1", "s5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.4\n");
  EXPECT_EQ(run({"degree", sample("example.json"), "s1", "nope"}).code, 1);
}

TEST(Cli, EnginesProduceIdenticalOutput) {
  for (const char *cmd : {"crisp-partition", "fuzzy-partition"})
    for (const char *model : {"example.json", "labeled.json"}) {
      auto a = run({"--engine", "efficient", cmd, sample(model)});
      auto b = run({"--engine", "oracle", cmd, sample(model)});
      EXPECT_EQ(a.code, 0);
      EXPECT_EQ(a.out, b.out) << cmd << " " << model;
    }
  auto a = run({"fuzzy-sim", sample("example.json"), sample("example.txt")});
  auto b = run({"--engine", "oracle", "fuzzy-sim", sample("example.json"), sample("example.txt")});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Simulations) {
  auto r = run({"crisp-sim", sample("example.json"), sample("example.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("s3 s4\n"), std::string::npos);
  auto f = run({"fuzzy-sim", sample("example.json"), sample("example.json")});
  EXPECT_NE(f.out.find("s1 s1 1\n"), std::string::npos);
}

TEST(Cli, BisimBetween) {
  auto r = run({"bisim-between", sample("example.json"), sample("example.txt"), "--mode", "fuzzy"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("s1 s2 0.4\n"), std::string::npos);
  auto c = run({"bisim-between", sample("example.json"), sample("example.txt")});
  EXPECT_NE(c.out.find("s2 s5\n"), std::string::npos);
  EXPECT_EQ(c.out.find("s1 s2"), std::string::npos);
  auto mismatch = run({"bisim-between", sample("example.json"), sample("labeled.json")});
  EXPECT_EQ(mismatch.code, 1);
  EXPECT_NE(mismatch.err.find("alphabets differ"), std::string::npos);
}

TEST(Cli, CheckAcceptsAndRejects) {
  auto ok = run({"check", sample("example.json"), sample("example_relation.txt"), "--kind",
                 "fuzzy-bisim"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.out, "holds\n");
  auto bad_rel = temp_file("all.txt", "s1 s3\ns3 s1\n");
  auto bad = run({"check", sample("example.json"), bad_rel, "--kind", "crisp-bisim"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("fails clause"), std::string::npos);
  auto not_crisp = run({"check", sample("example.json"), sample("example_relation.txt"), "--kind",
                        "crisp-bisim"});
  EXPECT_EQ(not_crisp.code, 1);
}

TEST(Cli, JsonOutputSchema) {
  auto r = run({"--json", "fuzzy-partition", sample("example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  for (const char *k : {"command", "input", "result", "engine", "wall_time_ms"})
    EXPECT_TRUE(doc.contains(k)) << k;
  EXPECT_EQ(doc["command"], "fuzzy-partition");
  EXPECT_EQ(doc["engine"], "efficient");
  EXPECT_EQ(doc["result"]["degree"], "0");
  auto c = nlohmann::json::parse(run({"--json", "crisp-partition", sample("example.json")}).out);
  EXPECT_EQ(c["result"].size(), 3u);
}

TEST(Cli, VerboseGoesToStderr) {
  auto quiet = run({"fuzzy-partition", sample("example.json")});
  auto loud = run({"--verbose", "fuzzy-partition", sample("example.json")});
  EXPECT_EQ(quiet.out, loud.out);
  EXPECT_NE(loud.err.find("level"), std::string::npos);
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"crisp-partition"}).code, 2);
  EXPECT_EQ(run({"--engine", "fast", "crisp-partition", sample("example.json")}).code, 2);
  EXPECT_EQ(run({"check", sample("example.json"), sample("example_relation.txt")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitWithOne) {
  auto r = run({"crisp-partition", "/nonexistent/model.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
  auto bad = temp_file("bad.txt", "states x\nactions a\ntrans x a x:1.5\n");
  auto b = run({"crisp-partition", bad});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.err.find("line 3"), std::string::npos);
}

TEST(Cli, GenIsDeterministicAndLoadable) {
  auto a = run({"gen", "--states", "6", "--seed", "9", "--labels", "2", "--label-density", "0.5"});
  auto b = run({"gen", "--states", "6", "--seed", "9", "--labels", "2", "--label-density", "0.5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto path = temp_file("gen.json", a.out);
  EXPECT_EQ(run({"crisp-partition", path}).code, 0);
  auto text = run({"gen", "--format", "text", "--seed", "9"});
  EXPECT_EQ(text.out.rfind("kind", 0), 0u);
  EXPECT_EQ(run({"gen", "--states", "2", "--support-max", "5"}).code, 1);
}

TEST(Cli, BenchPrintsCsvAndSlope) {
  auto r = run({"bench", "--sizes", "20,40", "--oracle-max-m", "700"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind(bench::csv_header(), 0), 0u);
  EXPECT_NE(r.out.find("crisp/oracle"), std::string::npos);
  EXPECT_NE(r.out.find("slope(crisp/efficient)"), std::string::npos);
  EXPECT_EQ(run({"bench", "--sizes", "x"}).code, 2);
}
