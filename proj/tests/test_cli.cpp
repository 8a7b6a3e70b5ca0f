#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qcap::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, DepolarizingCapacityCsv) {
  const CliResult r = run({"capacity", "--kind", "depolarizing", "--p", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0].rfind("kind,param,chi,C_hsw", 0), 0u);
  EXPECT_NE(l[1].find(",1,"), std::string::npos) << l[1];
}

TEST(Cli, SweepProducesOneRowPerPoint) {
  const CliResult r = run({"capacity", "--kind", "depolarizing", "--sweep", "0:1:0.25", "--measure", "analytic"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 6u);
}

TEST(Cli, JsonOutputParses) {
  const CliResult r = run({"capacity", "--kind", "erasure", "--p", "0.25", "--measure", "analytic", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["kind"], "erasure");
}

TEST(Cli, UnknownKindIsUsageError) {
  EXPECT_EQ(run({"capacity", "--kind", "nosuch"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, ChannelFileExcludesKind) {
  EXPECT_EQ(run({"capacity", "--kind", "depolarizing", "--channel-file", "x.json"}).code, 2);
}

TEST(Cli, UnsupportedSolverExitsWithOne) {
  const CliResult r = run({"capacity", "--kind", "identity", "--dim", "3", "--measure", "hsw-geo"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, ChannelInspect) {
  const CliResult r = run({"channel-inspect", "--kind", "amplitude_damping", "--gamma", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "label,dim_in,dim_out,kraus_count,cptp,unital,degradable,entanglement_breaking");
  EXPECT_NE(l[1].find("true,false,true,false"), std::string::npos) << l[1];
}

TEST(Cli, PentagonZeroError) {
  const CliResult r = run({"zero-error", "--graph", "pentagon", "--uses", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[2].rfind("2,5,1.16096", 0), 0u) << l[2];
}

TEST(Cli, RepeaterRate) {
  const CliResult r = run({"repeater-rate", "--segments", "2", "--l0", "20km", "--p0", "0.5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& row = j.is_array() ? j[0] : j;
  EXPECT_DOUBLE_EQ(row["T0"].get<double>(), 2e-4);
}

TEST(Cli, RepeaterSimTraceFile) {
  const std::string path = ::testing::TempDir() + "qcap_trace.jsonl";
  const CliResult r = run({"repeater-sim", "--policy", "symmetric", "--f0", "0.638", "--forced", "--max-level", "5",
                     "--target", "0.9999999", "--trace", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_NE(l[1].find(",32,"), std::string::npos) << l[1];
  std::ifstream in(path);
  std::string first;
  ASSERT_TRUE(std::getline(in, first));
  EXPECT_TRUE(nlohmann::json::parse(first).contains("round"));
  std::remove(path.c_str());
}

TEST(Cli, OutFileOption) {
  const std::string path = ::testing::TempDir() + "qcap_out.csv";
  const CliResult r = run({"repeater-rate", "--p0", "1", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  ASSERT_TRUE(std::getline(in, header));
  EXPECT_EQ(header.rfind("F0,P0,n,T0", 0), 0u);
  std::remove(path.c_str());
}
