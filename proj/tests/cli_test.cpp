// Copyright 2026 The feyncount Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "feyncount/exact.hpp"
#include "json.hpp"

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + FEYNCOUNT_CLI + std::string(" ") + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

TEST(CliCount, AllMethodsMatch) {
  const auto r = run("count --N 1 --m 2 --method all");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "explicit 80\nseries-log 80\noracle 80\nMATCH\n");
}

TEST(CliCount, VacuumAndNormalized) {
  EXPECT_EQ(run("count --N 0 --m 2").out, "20\n");
  EXPECT_EQ(run("count --N 3 --m 2 --normalized").out, "6\n");
  EXPECT_EQ(run("count --N 0 --m 3 --method all").out,
            "explicit 592\nseries-log 592\nrecurrence 592\noracle 592\nMATCH\n");
}

TEST(CliCount, JsonRoundTrips) {
  const auto r = run("count --N 2 --m 12 --method series-log --normalized --format json --no-timestamp");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& rec = doc["records"][0];
  EXPECT_EQ(rec["N"], 2);
  EXPECT_EQ(rec["m"], 12);
  EXPECT_EQ(rec["method"], "series-log");
  const feyncount::ExactInt value = feyncount::parse_int(rec["value"].get<std::string>());
  EXPECT_EQ(feyncount::to_string(value), rec["value"].get<std::string>());
  const feyncount::ExactRat norm = feyncount::parse_rat(rec["normalized"].get<std::string>());
  EXPECT_EQ(norm * feyncount::ExactRat(feyncount::factorial(12) * 4096), feyncount::ExactRat(value));
  EXPECT_FALSE(doc.contains("timestamp"));
}

TEST(CliCount, DeterministicWithoutTimestamp) {
  const std::string args = "count --N 1 --m 4 --method all --format json --no-timestamp";
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_TRUE(nlohmann::json::parse(run("count --N 1 --m 1 --format json").out).contains("timestamp"));
}

TEST(CliCount, CsvFromEnvironmentAndFile) {
  EXPECT_EQ(run("count --N 1 --m 2", "FEYNCOUNT_FORMAT=csv").out, "N,m,method,value\n1,2,explicit,80\n");
  const std::string path = testing::TempDir() + "feyncount_cli_out.csv";
  EXPECT_EQ(run("count --N 1 --m 2 --format csv --output " + path).status, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "N,m,method,value\n1,2,explicit,80\n");
}

TEST(CliCount, OracleBudgetRefusal) {
  const auto r = run("count --N 1 --m 6 --method oracle");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("--budget"), std::string::npos);
  const auto all = run("count --N 1 --m 6 --method all");
  EXPECT_EQ(all.status, 0);
  EXPECT_NE(all.out.find("oracle SKIPPED"), std::string::npos);
}

TEST(CliCount, UsageErrors) {
  EXPECT_EQ(run("count --N 1").status, 2);
  EXPECT_EQ(run("count --N 1 --m 2 --method bogus").status, 2);
  EXPECT_EQ(run("count --N 1 --m 2 --method recurrence").status, 2);
  EXPECT_EQ(run("count --N 6 --m 2 --method explicit").status, 2);
  EXPECT_EQ(run("count --N 2 --m 9 --method series-log --y-order 4").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST(CliAsym, CheckReferencePrincipal) {
  const auto r = run("asym --N 0 --n 1 --order 6 --check-paper");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("prefactor equal, 6/6 cells equal"), std::string::npos) << r.out;
}

TEST(CliAsym, CenteredRowAndOrderZero) {
  const auto r = run("asym --N 2 --n 4 --order 6 --format json --no-timestamp");
  ASSERT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& c = doc["contributions"][0];
  EXPECT_EQ(c["bracket"][0], "1815/56");
  EXPECT_EQ(c["coefficients"][0], "1");
  EXPECT_EQ(c["prefactor"]["sign"], -1);
  EXPECT_EQ(c["prefactor"]["sqrt"], "2");
  EXPECT_EQ(c["prefactor"]["base"], "4");
  const auto zero = run("asym --N 0 --n 2 --order 0");
  EXPECT_NE(zero.out.find("series:    1 "), std::string::npos) << zero.out;
}

TEST(CliAsym, UnsupportedCells) {
  EXPECT_EQ(run("asym --N 0 --n 5").status, 2);
  EXPECT_EQ(run("asym --N 0 --n 5 --family custom --order 2").status, 0);
}

TEST(CliAsym, AllTabulatedCellsRationalRoute) {
  const auto r = run("asym --all --check-reference --route rational --format json --no-timestamp");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["contributions"].size(), 24u);
  for (const auto& c : doc["contributions"]) {
    EXPECT_TRUE(c["check"]["prefactor_equal"].get<bool>());
    EXPECT_EQ(c["check"]["cells_equal"], 6);
  }
}

TEST(CliVerify, SweepsPass) {
  const auto r = run("verify --max-m 8 --max-N 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("ALL PASS"), std::string::npos);
  EXPECT_EQ(run("verify --max-m 0 --max-N 1").status, 0);
  const auto o = run("verify --oracle --max-m 6 --max-N 3");
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_NE(o.out.find("SKIPPED over budget"), std::string::npos);
}

}  // namespace
