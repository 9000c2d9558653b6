#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "toporna/cli.hpp"

namespace toporna {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const CliRun r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

TEST(Cli, CountExamples) {
  EXPECT_EQ(run_json({"count", "4", "--genus", "1", "--lambda", "1", "--r", "1"})["rows"][0]["count"], "1");
  const auto five = run_json({"count", "5", "--genus", "1", "--oracle"});
  EXPECT_EQ(five["rows"][0]["count"], "5");
  EXPECT_EQ(five["rows"][0]["oracle"], "5");
  EXPECT_EQ(run_json({"count", "3", "--genus", "0", "--lambda", "2", "--r", "1"})["rows"][0]["count"], "2");
  EXPECT_EQ(run_json({"count", "8", "--genus", "1", "--arcs", "4", "--oracle"})["rows"][0]["oracle"], "70");
}

TEST(Cli, ParamsAreEchoedAndCountsAreStrings) {
  const auto doc = run_json({"count", "200", "--genus", "2", "--lambda", "2", "--r", "2"});
  EXPECT_EQ(doc["params"]["genus"], "2");
  EXPECT_EQ(doc["params"]["lambda"], "2");
  EXPECT_TRUE(doc["rows"][0]["count"].is_string());
  EXPECT_GT(doc["rows"][0]["count"].get<std::string>().size(), 20u);
}

TEST(Cli, StructureCommands) {
  const auto g = run_json({"genus", "([)]"});
  EXPECT_EQ(g["rows"][0]["genus"], "1");
  EXPECT_EQ(g["rows"][0]["boundaries"], "1");
  const auto c = run_json({"classify", "([)]"});
  ASSERT_EQ(c["rows"].size(), 1u);
  EXPECT_EQ(c["rows"][0]["class"], "H");
  const auto d = run_json({"decompose", "((..))"});
  EXPECT_TRUE(d["detail"][0]["exterior"].empty());
  for (const auto& b : d["detail"][0]["blocks"]) EXPECT_EQ(b["arcs"].size(), 1u);
}

TEST(Cli, StructuresFromFile) {
  const std::string path = ::testing::TempDir() + "structures.txt";
  {
    std::ofstream f(path);
    f << "([)]\n\n((..))\n";
  }
  const auto g = run_json({"genus", "--file", path});
  ASSERT_EQ(g["rows"].size(), 2u);
  EXPECT_EQ(g["rows"][1]["genus"], "0");
}

TEST(Cli, ParseErrorsCarryColumns) {
  const CliRun r = run({"genus", "(()"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("column"), std::string::npos);
}

TEST(Cli, SeriesAndShapes) {
  const auto s = run_json({"series", "dg", "--genus", "1", "--order", "10"});
  const std::vector<std::string> want{"0", "0", "0", "0", "1", "5", "25", "105", "420", "1596"};
  for (std::size_t n = 0; n < want.size(); ++n) EXPECT_EQ(s["rows"][n]["coefficient"], want[n]);
  const auto h = run_json({"shapes", "--genus", "1", "--mark", "H"});
  // x^3 (x+1)(x+2) + x^2 (1+x) y
  std::map<std::pair<std::string, std::string>, std::string> terms;
  for (const auto& row : h["rows"]) terms[{row["arcs"], row["marks"]}] = row["count"];
  const std::map<std::pair<std::string, std::string>, std::string> expect{
      {{"2", "1"}, "1"}, {{"3", "0"}, "2"}, {{"3", "1"}, "1"}, {{"4", "0"}, "3"}, {{"5", "0"}, "1"}};
  EXPECT_EQ(terms, expect);
  const auto marked = run_json({"series", "d0", "--order", "8", "--mark", "hairpin"});
  EXPECT_EQ(marked["rows"][3]["d1"], "3");
}

TEST(Cli, RejectsStemAndBadParameters) {
  EXPECT_EQ(run({"series", "d0", "--mark", "stem"}).code, kExitDomain);
  EXPECT_EQ(run({"count", "10", "--genus", "1", "--lambda", "3", "--r", "1"}).code, kExitDomain);
  EXPECT_EQ(run({"count", "20", "--genus", "1", "--oracle"}).code, kExitDomain);
  EXPECT_EQ(run({"--precision", "10", "clt"}).code, kExitUsage);
  EXPECT_EQ(run({"--ceiling", "30", "census", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, kExitUsage);
}

TEST(Cli, CltAndExpect) {
  const auto c = run_json({"clt", "--lambda", "1", "--r", "1"});
  EXPECT_EQ(c["rows"][0]["mu"].get<std::string>().substr(0, 8), "0.333333");
  const auto e = run_json({"expect", "--type", "H", "--genus", "1", "--n", "100"});
  EXPECT_NE(e["rows"][0]["exact_mean"], "n/a");
  EXPECT_NE(e["rows"][0]["leading_term"], "n/a");
}

TEST(Cli, SampleOutputIsDeterministic) {
  const CliRun a = run({"--seed", "9", "sample", "--n", "14", "--genus", "1", "--count", "5"});
  const CliRun b = run({"--seed", "9", "sample", "--n", "14", "--genus", "1", "--count", "5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_NE(line.find("generator=mt19937_64+splitmix64"), std::string::npos);
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.size(), 14u);
    ++n;
  }
  EXPECT_EQ(n, 5);
}

TEST(Cli, CsvHasOneHeaderAndParameterColumns) {
  const CliRun r = run({"--format", "csv", "census", "6"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("n,lambda,r,ceiling,genus,structures", 0), 0u);
  EXPECT_EQ(row.rfind("6,1,1,18,0,", 0), 0u);
}

}  // namespace
}  // namespace toporna
