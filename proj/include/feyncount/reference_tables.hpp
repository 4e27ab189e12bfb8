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

#ifndef FEYNCOUNT_REFERENCE_TABLES_HPP
#define FEYNCOUNT_REFERENCE_TABLES_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "asymptotics.hpp"
#include "exact.hpp"
#include "polynomial.hpp"

namespace feyncount {

// Reference asymptotic coefficient tables for 0 <= N <= 5 and families
// n = 1..4. Each row is the prefactor as printed and the bracket
// coefficients a_1..a_6 of [1 - a_1/m - a_2/m^2 - ...], stored as positive
// fractions exactly as printed. Centered rows assume n | m.
struct ReferenceCell {
  int N;
  int n;
  int sign;
  const char* constant;  // rational constant of the printed prefactor
  bool over_sqrt2;       // printed prefactor carries 1/sqrt(2)
  int base;              // contribution scales as base^-m
  std::vector<std::pair<int, int>> factors;  // linear factors a*m + b
  std::array<const char*, 6> coefficients;
  const char* printed;

  AsymptoticPrefactor prefactor() const {
    AsymptoticPrefactor p;
    p.sign = sign;
    p.scalar = parse_rat(constant);
    if (over_sqrt2) {
      p.scalar /= 2;  // 1/sqrt(2) = sqrt(2)/2
      p.radicand = 2;
    }
    p.geometric = make_rat(1, base);
    p.factorial_2m = true;
    for (auto [a, b] : factors) p.factors.push_back(Polynomial::linear(a, b));
    return p;
  }

  std::vector<ExactRat> bracket() const {
    std::vector<ExactRat> out;
    for (const char* c : coefficients) out.push_back(parse_rat(c));
    return out;
  }
};

inline const std::vector<ReferenceCell>& reference_tables() {
  static const std::vector<ReferenceCell> cells = {
    // N=0, n=1: printed prefactor (2m)!
    {0, 1, 1, "1", false, 1, {},
     {{"1/2", "3/4", "19/8", "191/16", "2551/32", "41935/64"}},
     "(2m)!"},
    // N=0, n=2: printed prefactor -(2m)!/(2^m sqrt2)
    {0, 2, -1, "1", true, 2, {},
     {{"33/8", "1599/128", "98683/1024", "37584917/32768", "4542533551/262144", "1306413864411/4194304"}},
     "-(2m)!/(2^m sqrt2)"},
    // N=0, n=3: printed prefactor (2m)! 2/3^(m+1)
    {0, 3, 1, "2/3", false, 3, {},
     {{"83/6", "2023/36", "540553/648", "70424971/3888", "10981940885/23328", "5898719946727/419904"}},
     "(2m)! 2/3^(m+1)"},
    // N=0, n=4: printed prefactor -(2m)!/(4^m sqrt2)
    {0, 4, -1, "1", true, 4, {},
     {{"261/8", "15847/128", "3780271/1024", "4349723845/32768", "1384519231451/262144", "977871757263603/4194304"}},
     "-(2m)!/(4^m sqrt2)"},
    // N=1, n=1: printed prefactor (2m)! (2m)
    {1, 1, 1, "1", false, 1, {{2, 0}},
     {{"1/2", "3/4", "19/8", "191/16", "2551/32", "41935/64"}},
     "(2m)! (2m)"},
    // N=1, n=2: printed prefactor -(2m)! (2m)/(2^m sqrt2)
    {1, 2, -1, "1", true, 2, {{2, 0}},
     {{"33/8", "1599/128", "98683/1024", "37584917/32768", "4542533551/262144", "1306413864411/4194304"}},
     "-(2m)! (2m)/(2^m sqrt2)"},
    // N=1, n=3: printed prefactor (2m)! (4m)/3^(m+1)
    {1, 3, 1, "1/3", false, 3, {{4, 0}},
     {{"83/6", "2023/36", "540553/648", "70424971/3888", "10981940885/23328", "5898719946727/419904"}},
     "(2m)! (4m)/3^(m+1)"},
    // N=1, n=4: printed prefactor -(2m)! (2m)/(4^m sqrt2)
    {1, 4, -1, "1", true, 4, {{2, 0}},
     {{"261/8", "15847/128", "3780271/1024", "4349723845/32768", "1384519231451/262144", "977871757263603/4194304"}},
     "-(2m)! (2m)/(4^m sqrt2)"},
    // N=2, n=1: printed prefactor (2m)! m(2m-1)
    {2, 1, 1, "1", false, 1, {{1, 0}, {2, -1}},
     {{"1/2", "7/4", "35/8", "315/16", "4063/32", "65875/64"}},
     "(2m)! m(2m-1)"},
    // N=2, n=2: printed prefactor -(2m)! (3m)(2m-1)/(2^(m+1) sqrt2)
    {2, 2, -1, "1/2", true, 2, {{3, 0}, {2, -1}},
     {{"95/24", "6053/384", "335117/3072", "41864677/32768", "15124159777/786432", "4342579796905/12582912"}},
     "-(2m)! (3m)(2m-1)/(2^(m+1) sqrt2)"},
    // N=2, n=3: printed prefactor (2m)! (10m)(2m-1)/3^(m+2)
    {2, 3, 1, "1/9", false, 3, {{10, 0}, {2, -1}},
     {{"409/30", "11567/180", "2825147/3240", "367944611/19440", "57423636091/116640", "30856162470899/2099520"}},
     "(2m)! (10m)(2m-1)/3^(m+2)"},
    // N=2, n=4: printed prefactor -(2m)! (7m)(2m-1)/(4^(m+1) sqrt2)
    {2, 4, -1, "1/4", true, 4, {{7, 0}, {2, -1}},
     {{"1815/56", "125289/896", "26865149/7168", "31135765875/229376", "9929674629241/1835008", "7019179014307085/29360128"}},
     "-(2m)! (7m)(2m-1)/(4^(m+1) sqrt2)"},
    // N=3, n=1: printed prefactor (2m)! (m/3)(2m-1)(2m-2)
    {3, 1, 1, "1/3", false, 1, {{1, 0}, {2, -1}, {2, -2}},
     {{"1/2", "15/4", "67/8", "515/16", "6511/32", "106891/64"}},
     "(2m)! (m/3)(2m-1)(2m-2)"},
    // N=3, n=2: printed prefactor -(2m)! 5m(2m-1)(2m-2)/(2^(m+1) 3 sqrt2)
    {3, 2, -1, "5/6", true, 2, {{1, 0}, {2, -1}, {2, -2}},
     {{"153/40", "2967/128", "730427/5120", "258987193/163840", "6200256955/262144", "8899805020047/20971520"}},
     "-(2m)! 5m(2m-1)(2m-2)/(2^(m+1) 3 sqrt2)"},
    // N=3, n=3: printed prefactor (2m)! 62m(2m-1)(2m-2)/3^(m+4)
    {3, 3, 1, "62/81", false, 3, {{1, 0}, {2, -1}, {2, -2}},
     {{"2483/186", "90181/1116", "19324681/20088", "2489331889/120528", "389719812857/723168", "209788775838769/13017024"}},
     "(2m)! 62m(2m-1)(2m-2)/3^(m+4)"},
    // N=3, n=4: printed prefactor -(2m)! m(2m-1)(2m-2)/(4^(m-1) 3 sqrt2)
    {3, 4, -1, "4/3", true, 4, {{1, 0}, {2, -1}, {2, -2}},
     {{"513/16", "2747/16", "7947125/2048", "4647075355/32768", "2979220269043/524288", "527637111526281/2097152"}},
     "-(2m)! m(2m-1)(2m-2)/(4^(m-1) 3 sqrt2)"},
    // N=4, n=1: printed prefactor (2m)! m(2m-1)(2m-2)(2m-3)/12
    {4, 1, 1, "1/12", false, 1, {{1, 0}, {2, -1}, {2, -2}, {2, -3}},
     {{"1/2", "27/4", "127/8", "863/16", "10627/32", "177343/64"}},
     "(2m)! m(2m-1)(2m-2)(2m-3)/12"},
    // N=4, n=2: printed prefactor -(2m)! 35m(2m-1)(2m-2)(2m-3)/(2^(m+5) 3 sqrt2)
    {4, 2, -1, "35/96", true, 2, {{1, 0}, {2, -1}, {2, -2}, {2, -3}},
     {{"207/56", "154797/4480", "1010879/5120", "457473011/229376", "273390683141/9175040", "79181536650081/146800640"}},
     "-(2m)! 35m(2m-1)(2m-2)(2m-3)/(2^(m+5) 3 sqrt2)"},
    // N=4, n=3: printed prefactor (2m)! 71m(2m-1)(2m-2)(2m-3)/(3^(m+4) 2)
    {4, 3, 1, "71/162", false, 3, {{1, 0}, {2, -1}, {2, -2}, {2, -3}},
     {{"5569/426", "271757/2556", "51508175/46008", "6421619153/276048", "1012202986195/1656288", "547529808276557/29813184"}},
     "(2m)! 71m(2m-1)(2m-2)(2m-3)/(3^(m+4) 2)"},
    // N=4, n=4: printed prefactor -(2m)! 679m(2m-1)(2m-2)(2m-3)/(4^(m+4) 3 sqrt2)
    {4, 4, -1, "679/768", true, 4, {{1, 0}, {2, -1}, {2, -2}, {2, -3}},
     {{"171963/5432", "19060513/86912", "2861770561/695296", "3355407464611/22249472", "1085932334589125/177995776", "772486899922478229/2847932416"}},
     "-(2m)! 679m(2m-1)(2m-2)(2m-3)/(4^(m+4) 3 sqrt2)"},
    // N=5, n=1: printed prefactor (2m)! m(2m-1)(2m-2)(2m-3)(2m-4)/60
    {5, 1, 1, "1/60", false, 1, {{1, 0}, {2, -1}, {2, -2}, {2, -3}, {2, -4}},
     {{"1/2", "43/4", "239/8", "1551/16", "17491/32", "289135/64"}},
     "(2m)! m(2m-1)(2m-2)(2m-3)(2m-4)/60"},
    // N=5, n=2: printed prefactor -(2m)! 21m(2m-1)(2m-2)(2m-3)(2m-4)/(2^(m+5) 5 sqrt2)
    {5, 2, -1, "21/160", true, 2, {{1, 0}, {2, -1}, {2, -2}, {2, -3}, {2, -4}},
     {{"257/72", "402257/8064", "17977229/64512", "1716536537/688128", "617217081673/16515072", "182510071595413/264241152"}},
     "-(2m)! 21m(2m-1)(2m-2)(2m-3)(2m-4)/(2^(m+5) 5 sqrt2)"},
    // N=5, n=3: printed prefactor (2m)! 517m(2m-1)(2m-2)(2m-3)(2m-4)/(3^(m+5) 10)
    {5, 3, 1, "517/2430", false, 3, {{1, 0}, {2, -1}, {2, -2}, {2, -3}, {2, -4}},
     {{"39731/3102", "2620231/18612", "453118381/335016", "53173092307/2010096", "8481478160825/12060576", "4635195165206599/217090368"}},
     "(2m)! 517m(2m-1)(2m-2)(2m-3)(2m-4)/(3^(m+5) 10)"},
    // N=5, n=4: printed prefactor -(2m)! 1969m(2m-1)(2m-2)(2m-3)(2m-4)/(4^(m+4) 15 sqrt2)
    {5, 4, -1, "1969/3840", true, 4, {{1, 0}, {2, -1}, {2, -2}, {2, -3}, {2, -4}},
     {{"492189/15752", "71257863/252032", "9032609159/2016256", "10457264010645/64520192", "3436211431133539/516161536", "2461472084613042227/8258584576"}},
     "-(2m)! 1969m(2m-1)(2m-2)(2m-3)(2m-4)/(4^(m+4) 15 sqrt2)"},
  };
  return cells;
}

inline const ReferenceCell& reference_cell(int N, int n) {
  for (const auto& c : reference_tables()) {
    if (c.N == N && c.n == n) return c;
  }
  throw InvalidArgument("no reference row for N=" + std::to_string(N) + ", n=" + std::to_string(n));
}

}  // namespace feyncount

#endif  // FEYNCOUNT_REFERENCE_TABLES_HPP
