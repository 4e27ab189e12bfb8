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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "feyncount/counts.hpp"
#include "feyncount/oracle.hpp"

namespace feyncount {
namespace {

TEST(SlotModel, Shape) {
  SlotModel s(3, 2);
  EXPECT_EQ(s.slot_count(), 8);
  EXPECT_EQ(s.node_count(), 7);
  for (int v = 0; v < 3; ++v) {
    EXPECT_EQ(std::count(s.out_owner().begin(), s.out_owner().end(), v), 2);
    EXPECT_EQ(std::count(s.in_owner().begin(), s.in_owner().end(), v), 2);
  }
  for (int node = 3; node < 7; ++node) {
    EXPECT_EQ(std::count(s.out_owner().begin(), s.out_owner().end(), node) +
                  std::count(s.in_owner().begin(), s.in_owner().end(), node),
              1);
  }
}

TEST(BruteForceConnected, Examples) {
  EXPECT_EQ(brute_force_connected(0, 1), 1);
  EXPECT_EQ(brute_force_connected(2, 0), 20);
  EXPECT_EQ(brute_force_connected(1, 2), 2);
  EXPECT_EQ(brute_force_connected(0, 0), 1);
  EXPECT_EQ(brute_force_connected(0, 2), 0);
  EXPECT_EQ(brute_force_connected(2, 3), 48);
}

TEST(BruteForceTotal, Examples) {
  EXPECT_EQ(brute_force_total(1, 1), 6);
  EXPECT_EQ(brute_force_total(2, 3), 5040);
  EXPECT_EQ(brute_force_total(0, 0), 1);
}

TEST(BruteForce, BudgetRefusal) {
  OracleOptions opts;
  opts.budget = 1000;
  try {
    brute_force_connected(3, 1, opts);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), 5040);
    EXPECT_NE(std::string(e.what()).find("--budget"), std::string::npos);
  }
  EXPECT_THROW(brute_force_total(3, 1, opts), BudgetExceeded);
}

TEST(BruteForce, TotalIsFactorial) {
  for (int m = 0; m <= 3; ++m) {
    for (int N = 0; N <= 3; ++N) EXPECT_EQ(brute_force_total(m, N), total_contractions(m, N));
  }
}

TEST(BruteForce, MatchesFormulas) {
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(brute_force_connected(m, 0), vacuum_connected(m)) << m;
  const std::vector<std::pair<int, int>> cases = {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {0, 2}, {1, 2}, {2, 2},
                                                  {3, 2}, {0, 3}, {1, 3}, {2, 3}, {1, 4}};
  for (auto [m, N] : cases) EXPECT_EQ(brute_force_connected(m, N), connected_general(N, m)) << m << "," << N;
}

TEST(BruteForce, IndependentOfSlotOrder) {
  std::mt19937 rng(7);
  for (auto [m, N] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
    SlotModel base(m, N);
    std::vector<int> out(static_cast<std::size_t>(base.slot_count()));
    std::iota(out.begin(), out.end(), 0);
    std::vector<int> in = out;
    std::shuffle(out.begin(), out.end(), rng);
    std::shuffle(in.begin(), in.end(), rng);
    EXPECT_EQ(brute_force_connected(base.relabeled(out, in)), brute_force_connected(base));
  }
}

TEST(BruteForce, ParallelMatchesSerial) {
  OracleOptions par;
  par.jobs = 4;
  EXPECT_EQ(brute_force_connected(3, 2, par), brute_force_connected(3, 2));
  EXPECT_EQ(brute_force_total(3, 2, par), brute_force_total(3, 2));
}

}  // namespace
}  // namespace feyncount
