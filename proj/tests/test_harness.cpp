#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "cind/harness.hpp"

using namespace cind;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

std::string cli() {
  const char* p = std::getenv("CIND_CLI");
  return p ? p : "cind";
}

Outcome sh(const std::string& args) {
  Outcome r;
  FILE* f = popen((cli() + " " + args + " 2>/dev/null").c_str(), "r");
  if (!f) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cind-test-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RunIsSatisfiedAndByteStable) {
  const auto cfg = file("zm.json", R"({"learner": "builtin:zero-marker", "language": {"finite": [0, 3]},
                                       "horizon": 10, "flavors": ["Ex_C", "CInd"]})");
  const auto a = sh("run --config " + cfg);
  const auto b = sh("run --config " + cfg);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto last = a.out.substr(a.out.rfind('\n', a.out.size() - 2) + 1);
  const auto j = harness::json::parse(last);
  EXPECT_EQ(j["record"], "verdict");
  EXPECT_EQ(j["verdict"], "Satisfied");
}

TEST_F(Cli, FalsifiedRunExitsOne) {
  const auto cfg = file("td.json", R"({"learner": "builtin:td-singleton", "language": {"finite": [0, 1]},
                                      "texts": [{"explicit": {"prefix": [0], "tail": 1}}], "horizon": 8})");
  EXPECT_EQ(sh("run --config " + cfg).code, 1);
}

TEST_F(Cli, SchemaErrorsExitTwo) {
  const auto cfg = file("zm.json", R"({"learner": "builtin:zero-marker", "language": {"finite": [0]}})");
  EXPECT_EQ(sh("run --config " + cfg + " --operator Nope").code, 2);
  EXPECT_EQ(sh("run --config " + file("bad.json", "{ not json")).code, 2);
  EXPECT_EQ(sh("run --config " + file("key.json", R"({"learner": "builtin:ind", "colour": 1})")).code, 2);
  EXPECT_EQ(sh("attack --theorem nope").code, 2);
  EXPECT_EQ(sh("frobnicate").code, 2);
}

TEST_F(Cli, TransformComparesVerdicts) {
  const auto cfg = file("d.json", R"({"learner": "builtin:td-pad-churn:{3,5}", "language": {"finite": [3, 5]},
                                     "horizon": 12, "m": 8})");
  const auto r = sh("transform --kind td-ex --learner builtin:td-pad-churn:{3,5} --config " + cfg);
  ASSERT_EQ(r.code, 0);
  const auto j = harness::json::parse(r.out);
  EXPECT_EQ(j["report"]["kind"], "td-ex");
  EXPECT_EQ(j["preserved"], true);
  EXPECT_EQ(j["transformed"]["verdict"], "Satisfied");
}

TEST_F(Cli, AttackReportsReplayValidatedWitness) {
  const auto r = sh("attack --theorem td-sep --opponent td-singleton");
  ASSERT_EQ(r.code, 0);
  const auto j = harness::json::parse(r.out);
  EXPECT_EQ(j["outcome"], "witness");
  EXPECT_EQ(j["replay_validated"], true);
}

TEST_F(Cli, MatrixTagsOutOfScopeEdges) {
  const auto cfg = file("mx.json", R"({"edges": ["td-sep", "sd-total"], "out_of_scope": ["td-sep"]})");
  const auto out = (dir_ / "mx-out.json").string();
  const auto r = sh("matrix --config " + cfg + " --out " + out);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("not-implemented"), std::string::npos);
  std::ifstream in(out);
  const auto j = harness::json::parse(in);
  ASSERT_TRUE(j.contains("edges"));
  for (const auto& e : j["edges"]) EXPECT_EQ(e["status"], "not-implemented") << e.dump();
}

TEST_F(Cli, DescribeShowsStructure) {
  const auto a = sh("describe " + ind({1}).str() + " --m 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("shape: ind"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("boolean-total"), std::string::npos) << a.out;
  const auto p = sh("describe " + pad(ind({1}), 9).str() + " --m 4");
  ASSERT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("unpad: index " + ind({1}).str() + ", payload 9"), std::string::npos) << p.out;
  const auto t = sh("describe --learner builtin:g-lagged --transform g2psd");
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find(zoo::g_lagged().program.str()), std::string::npos) << t.out;
}

TEST(Harness, LearnerSpecs) {
  EXPECT_EQ(harness::parse_learner("builtin:ind").kind, OperatorKind::Sd);
  EXPECT_EQ(harness::parse_learner("builtin:ind*").kind, OperatorKind::G);
  EXPECT_EQ(harness::parse_learner("builtin:td-pad-churn:{3,5}").program,
            harness::parse_learner("builtin:td-pad-churn:3,5").program);
  EXPECT_EQ(harness::parse_learner("idx:5", OperatorKind::Td).program, ProgramIndex(5));
  EXPECT_THROW(harness::parse_learner("builtin:nope"), std::exception);
  EXPECT_THROW(harness::parse_learner("idx:5"), std::exception);
}

TEST(Harness, RunIsDeterministicInProcess) {
  const auto cfg = harness::parse_config(harness::json::parse(
      R"({"learner": "builtin:ind", "language": {"finite": [2, 4]}, "texts": ["canonical", {"shuffle": {"text": "canonical", "seed": 3}}],
          "horizon": 10})"));
  const auto a = harness::run(cfg), b = harness::run(cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].dump(), b.records[i].dump());
  EXPECT_TRUE(a.aggregate.satisfied());
}
