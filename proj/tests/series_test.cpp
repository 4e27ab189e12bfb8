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

#include "feyncount/counts.hpp"
#include "feyncount/series.hpp"

namespace feyncount {
namespace {

TruncatedSeries poly(int order, std::vector<long> c) {
  std::vector<ExactRat> r;
  for (long v : c) r.emplace_back(v);
  return TruncatedSeries(order, std::move(r));
}

TEST(SeriesMul, Examples) {
  EXPECT_EQ(series_mul(poly(2, {1, 1}), poly(2, {1, -1})), poly(2, {1, 0, -1}));
  EXPECT_EQ(series_mul(poly(3, {1, 2}), poly(3, {1})), poly(3, {1, 2}));
  EXPECT_THROW(series_mul(poly(2, {1}), poly(3, {1})), SeriesError);
}

TEST(SeriesMul, InverseOfG) {
  for (int order = 4; order <= 16; ++order) {
    EXPECT_EQ(series_mul(g_series(order), g_inverse_series(order)), TruncatedSeries::constant(order, 1))
        << "order " << order;
    EXPECT_EQ(series_inverse(g_series(order)), g_inverse_series(order));
  }
}

TEST(SeriesLogExp, Examples) {
  TruncatedSeries expected(3, {ExactRat(0), ExactRat(1), make_rat(-1, 2), make_rat(1, 3)});
  EXPECT_EQ(series_log(poly(3, {1, 1})), expected);
  EXPECT_EQ(series_exp(series_log(g_series(8))), g_series(8));
  EXPECT_THROW(series_log(poly(3, {2, 1})), SeriesError);
  EXPECT_THROW(series_exp(poly(3, {1, 1})), SeriesError);
  EXPECT_THROW(series_inverse(poly(3, {0, 1})), SeriesError);
}

TEST(SeriesLogExp, ExpOfLogRoundTrip) {
  // 1 + y + 3y^2/2 - 7y^5
  TruncatedSeries a(7, {ExactRat(1), ExactRat(1), make_rat(3, 2), ExactRat(0), ExactRat(0), ExactRat(-7)});
  EXPECT_EQ(series_exp(series_log(a)), a);
  TruncatedSeries b(6, {ExactRat(0), make_rat(1, 3), ExactRat(-2)});
  EXPECT_EQ(series_log(series_exp(b)), b);
}

TEST(SeriesLogExp, LogOfGGivesConnectedVacuum) {
  const auto from_log = vacuum_from_log(12);
  for (int m = 1; m <= 12; ++m) {
    EXPECT_EQ(from_log[static_cast<std::size_t>(m)], vacuum_connected(m, VacuumMethod::composition_sum)) << m;
  }
}

TEST(BuildZ, Coefficients) {
  const auto z = build_Z(3, 4);
  EXPECT_EQ(z.coeff(0, 2), 12);
  EXPECT_EQ(z.coeff(1, 1), 6);
  EXPECT_EQ(z.coeff(2, 0), make_rat(1, 2));
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(z.coeff(0, m), g_series(4)[m]);
}

TEST(BivariateLog, ExpOfRowsRecoversZ) {
  // exp(W) = Z, checked through the x-nilpotent exponential.
  const int nx = 4, ny = 6;
  const auto z = build_Z(nx, ny);
  auto w = log_factored(z);
  BivariateTruncatedSeries rest(nx, ny);
  for (int N = 1; N <= nx; ++N) rest.row(N) = w.row(N);
  BivariateTruncatedSeries acc(nx, ny);
  acc.row(0) = TruncatedSeries::constant(ny, 1);
  BivariateTruncatedSeries power = acc;
  ExactInt kf = 1;
  for (int k = 1; k <= nx; ++k) {
    power = series_mul(power, rest);
    kf *= k;
    BivariateTruncatedSeries term = power;
    term *= make_rat(ExactInt(1), kf);
    acc += term;
  }
  const TruncatedSeries g0 = series_exp(w.row(0));
  for (int N = 0; N <= nx; ++N) EXPECT_EQ(series_mul(g0, acc.row(N)), z.row(N)) << "row " << N;
}

TEST(ConnectedFromLog, Examples) {
  const auto t = connected_from_log(3, 3);
  EXPECT_EQ(t.at(1, 1), 4);
  EXPECT_EQ(t.at(2, 0), 0);
  EXPECT_EQ(t.at(2, 1), 2);
  EXPECT_EQ(t.at(1, 0), 1);
  EXPECT_THROW(t.at(4, 1), SeriesError);
}

TEST(ConnectedFromLog, ZeroShelfAndNonNegative) {
  const auto t = connected_from_log(6, 12);
  for (int N = 1; N <= 6; ++N) {
    for (int m = 0; m <= 12; ++m) {
      if (m < N - 1) {
        EXPECT_EQ(t.at(N, m), 0) << N << "," << m;
      } else {
        EXPECT_GT(t.at(N, m), 0) << N << "," << m;
      }
    }
  }
}

TEST(ConnectedFromLog, FirstRowIsH) {
  const auto t = connected_from_log(2, 10);
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(t.at(1, m), H_coeff(m, 1));
}

}  // namespace
}  // namespace feyncount
