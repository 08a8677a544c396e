#include <gtest/gtest.h>

#include <sstream>

#include "cli.hh"
#include "report.hh"

using defekt::cli::run;
using Json = defekt::report::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DEFEKT_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, SplitStatements) {
  using defekt::cli::split_statements;
  EXPECT_EQ(split_statements("x0 + x1; x2\n x3 # comment\n"),
            (std::vector<std::string>{"x0 + x1", "x2", "x3"}));
  EXPECT_EQ(split_statements("x0*(x1 +\n x2)\n + x3\n").size(), 1u);
  EXPECT_EQ(split_statements("x0 +\n x1").size(), 1u);
  EXPECT_TRUE(split_statements("# only a comment\n\n").empty());
}

TEST(Cli, Sha256Vectors) {
  using defekt::cli::sha256_hex;
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, TjurinaOfCone) {
  auto r = call({"tjurina", "--poly", data("cone3.txt"), "--field", "Q"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["kind"], "tjurina");
  EXPECT_EQ(j["report"]["tau"], 8);
  EXPECT_EQ(j["report"]["chart"], 0);
  EXPECT_EQ(j["manifest"]["input_digests"].size(), 1u);
}

TEST(Cli, CertifyExitCodes) {
  auto ok = call({"certify", "--poly", data("node_cubic.txt"), "--field", "Q"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.json()["report"]["kind"], "NoDefect-Resolution");
  auto inc = call({"certify", "--poly", data("cone_cubic.txt"), "--field", "Q"});
  EXPECT_EQ(inc.code, 2);
  EXPECT_EQ(inc.json()["status"], "inconclusive");
}

TEST(Cli, ErrorsAndUsage) {
  EXPECT_EQ(call({}).code, 64);
  EXPECT_EQ(call({"frobnicate"}).code, 64);
  EXPECT_EQ(call({"census", "quad", "--n", "3"}).code, 64);
  auto bad = call({"tjurina", "--expr", "x0^2+x1^2", "--field", "F6"});
  EXPECT_EQ(bad.code, 1);
  auto e = Json::parse(bad.err);
  EXPECT_TRUE(e.contains("error"));
  auto missing = call({"classify", "--poly", data("no_such_file.txt"), "--field", "Q"});
  EXPECT_EQ(missing.code, 1);
}

TEST(Cli, DensityNeedsSeed) {
  EXPECT_EQ(call({"census", "density", "--n", "2", "--q", "3", "--d", "3", "--samples", "10"}).code, 64);
}

TEST(Cli, DensityReportDeterministic) {
  std::vector<std::string> args{"census", "density", "--n", "2", "--q", "3", "--d", "3", "--samples", "200", "--seed", "7"};
  auto a = call(args);
  args.insert(args.end(), {"--jobs", "3"});
  auto b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.json()["report"].dump(), b.json()["report"].dump());
}

TEST(Cli, CensusCsv) {
  auto r = call({"census", "density", "--n", "2", "--q", "3", "--d", "1", "--exhaustive", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("smooth,26,"), std::string::npos);
}

TEST(Cli, BettiAndCone) {
  auto b = call({"betti", "--smooth", "4", "5"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.json()["report"]["h"][3], 204);
  auto c = call({"cone", "--poly", data("cone3.txt"), "--field", "Q"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.json()["report"]["defect"]["delta"], 2);
}
