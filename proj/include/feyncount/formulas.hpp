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

#ifndef FEYNCOUNT_FORMULAS_HPP
#define FEYNCOUNT_FORMULAS_HPP

#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "polynomial.hpp"

// Closed composition formulas for the connected counts N_c,m^(N), N = 1..5.
// Each formula is a list of sums of the same shape,
//
//   sum_{n=1}^{m-k} [num(n,m) / den(n)] <C_n^m>_{idx} Delta_N(n),
//
// with k = |idx| and Delta_N(n) = N_n^(N)/N! - N_n^(N-1)/(N-1)!. The weights
// are transcribed as printed; the asymptotic engine evaluates the same groups
// symbolically, so both consumers share one transcription.

namespace feyncount {

struct FormulaGroup {
  BivariatePolynomial numerator;    // in n and m
  BivariatePolynomial denominator;  // in n only
  MultiIndex idx;                   // empty: plain C_n^m
  int upper_offset = 0;             // printed upper limit is m - upper_offset
};

struct ExactFormula {
  int N = 0;
  std::vector<FormulaGroup> groups;
};

/// Delta_N(n) = (2n+N)!/N! - (2n+N-1)!/(N-1)!.
inline ExactInt leg_step(int n, int N) {
  return factorial(2L * n + N) / factorial(N) - factorial(2L * n + N - 1) / factorial(N - 1);
}

/// Delta_N(n) / (2n)! = 2n (2n+1) ... (2n+N-1) / N!, as a polynomial in n.
inline Polynomial leg_step_ratio(int N) {
  Polynomial r(1);
  for (int j = 0; j < N; ++j) r *= Polynomial::linear(2, j);
  return r * Polynomial(make_rat(1, factorial(N).get_si()));
}

namespace detail {

inline BivariatePolynomial product_n(std::initializer_list<std::pair<long, long>> factors) {
  BivariatePolynomial r(1);
  for (auto [a, b] : factors) r = r * BivariatePolynomial::linear_n(a, b);
  return r;
}

inline BivariatePolynomial m_minus_n() {
  return BivariatePolynomial::m() - BivariatePolynomial::n();
}

inline std::vector<ExactFormula> build_formulas() {
  using BP = BivariatePolynomial;
  std::vector<ExactFormula> out;

  // N = 1: sum C_n^m [N_n^(1) - D_n].
  out.push_back({1, {{BP(1), BP(1), {}, 0}}});

  // N = 2: sum (4m-2n-1)/(2n+1) C_n^m Delta_2(n), with the numerator split
  // as (2n-1) + 4(m-n) into its two partition groups.
  {
    const BP den = product_n({{2, 1}});
    out.push_back({2,
                   {{product_n({{2, -1}}), den, {}, 0},
                    {BP(4) * m_minus_n(), den, {}, 0}}});
  }

  // N = 3.
  {
    const BP den = product_n({{1, 1}, {2, 1}});
    out.push_back({3,
                   {{product_n({{1, -1}, {2, -1}}), den, {}, 0},
                    {BP(9) * m_minus_n() * product_n({{2, -1}}), den, {}, 0},
                    {BP(6), den, {1, 1}, 2}}});
  }

  // N = 4.
  {
    const BP den = product_n({{2, 1}, {2, 3}, {1, 1}});
    out.push_back({4,
                   {{product_n({{2, -1}, {2, -3}, {1, -1}}), den, {}, 0},
                    {BP(16) * m_minus_n() * BP::in_n({-7, -24, 4}), den, {}, 0},
                    {BP(18), product_n({{2, 1}, {1, 1}}), {2}, 1},
                    {BP(72) * product_n({{2, -1}}), den, {1, 1}, 2},
                    {BP(72), den, {1, 1, 1}, 3}}});
  }

  // N = 5.
  {
    const BP den = product_n({{2, 1}, {2, 3}, {1, 1}, {1, 2}});
    out.push_back({5,
                   {{product_n({{2, -1}, {2, -3}, {1, -1}, {1, -2}}), den, {}, 0},
                    {BP(25) * m_minus_n() * BP::in_n({89, 131, -44, 4}), den, {}, 0},
                    {BP(100) * BP::in_n({-8, -3, 2}), den, {2}, 1},
                    {BP(200) * BP::in_n({-8, -21, 2}), den, {1, 1}, 2},
                    {BP(450), product_n({{2, 1}, {1, 1}, {1, 2}}), {2, 1}, 2},
                    {BP(900) * product_n({{2, -1}}), den, {1, 1, 1}, 3},
                    {BP(720), den, {1, 1, 1, 1}, 4}}});
  }
  return out;
}

}  // namespace detail

inline constexpr int kMaxExplicitLegs = 5;

/// The printed exact formula for 1 <= N <= 5.
inline const ExactFormula& exact_formula(int N) {
  static const std::vector<ExactFormula> formulas = detail::build_formulas();
  if (N < 1 || N > kMaxExplicitLegs) {
    throw InvalidArgument("explicit formulas exist only for 1 <= N <= 5 (got N=" +
                          std::to_string(N) + "); use connected_general");
  }
  return formulas[static_cast<std::size_t>(N - 1)];
}

/// Evaluates an exact formula at order m with exact arithmetic.
inline ExactRat evaluate_formula(const ExactFormula& formula, int m) {
  ExactRat acc = 0;
  for (const auto& g : formula.groups) {
    for (int n = 1; n <= m - g.upper_offset; ++n) {
      const ExactRat weight = g.numerator(n, m) / g.denominator(n, m);
      if (weight == 0) continue;
      acc += weight * ExactRat(C_symbol_generalized(n, m, g.idx) * leg_step(n, formula.N));
    }
  }
  return acc;
}

}  // namespace feyncount

#endif  // FEYNCOUNT_FORMULAS_HPP
