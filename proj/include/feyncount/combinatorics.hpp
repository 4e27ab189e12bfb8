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

#ifndef FEYNCOUNT_COMBINATORICS_HPP
#define FEYNCOUNT_COMBINATORICS_HPP

#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <vector>

#include "composition.hpp"
#include "exact.hpp"

// Composition-indexed building blocks of the connected-diagram formulas:
// F(c), the inverse coefficients h_m of g(y) = sum (2m)!/m! y^m, the symbols
// C_n^m and their f-weighted generalizations, and the H coefficients.

namespace feyncount {

enum class HMethod { composition_sum, recurrence };
enum class HMultiMethod { convolution, simplified };

/// (2a)!/a!, the per-part factor of F.
inline ExactInt part_weight(long a) { return factorial(2 * a) / factorial(a); }

/// F(c) = prod_j (2 a_j)! / a_j!.
inline ExactInt F(std::span<const int> parts) {
  ExactInt r = 1;
  for (int a : parts) r *= part_weight(a);
  return r;
}
inline ExactInt F(const Composition& c) { return F(c.parts()); }

namespace detail {

// Append-only cache of h_m filled by the recurrence.
class InverseCoeffTable {
 public:
  InverseCoeffTable() : values_{ExactInt(1)} {}

  ExactInt get(unsigned m) {
    {
      std::shared_lock lock(mu_);
      if (m < values_.size()) return values_[m];
    }
    std::unique_lock lock(mu_);
    while (values_.size() <= m) {
      const long next = static_cast<long>(values_.size());
      ExactInt acc = 0;
      for (long n = 1; n <= next; ++n) {
        acc += part_weight(n) * values_[static_cast<std::size_t>(next - n)];
      }
      values_.push_back(-acc);
    }
    return values_[m];
  }

 private:
  std::shared_mutex mu_;
  std::vector<ExactInt> values_;
};

inline InverseCoeffTable& inverse_coeff_table() {
  static InverseCoeffTable table;
  return table;
}

template <typename Key>
class ValueCache {
 public:
  template <typename Compute>
  ExactInt get(const Key& key, Compute&& compute) {
    {
      std::shared_lock lock(mu_);
      if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    // Concurrent misses may compute the same entry twice; the values agree.
    ExactInt v = compute();
    std::unique_lock lock(mu_);
    values_.emplace(key, v);
    return v;
  }

 private:
  std::shared_mutex mu_;
  std::map<Key, ExactInt> values_;
};

}  // namespace detail

/// Signed composition sum sum_i (-1)^i sum_{c in C_i(m)} F(c); 1 for m = 0.
inline ExactInt alternating_composition_sum(int m) {
  if (m == 0) return 1;
  ExactInt acc = 0;
  for (auto parts : compositions(m)) {
    ExactInt term = F(parts);
    if (parts.size() % 2) acc -= term; else acc += term;
  }
  return acc;
}

/// Coefficient h_m of g^{-1}(y).
inline ExactInt h_inverse_coeff(int m, HMethod method = HMethod::recurrence) {
  if (m < 0) throw InvalidArgument("h_inverse_coeff: m must be >= 0");
  if (method == HMethod::composition_sum) return alternating_composition_sum(m);
  return detail::inverse_coeff_table().get(static_cast<unsigned>(m));
}

/// Symbol C_n^m for 1 <= n <= m, evaluated as (m!/n!) h_{m-n}.
inline ExactInt C_symbol(int n, int m) {
  if (n < 1 || n > m) throw InvalidArgument("C_symbol: need 1 <= n <= m");
  if (n == m) return 1;
  static detail::ValueCache<std::pair<int, int>> cache;
  return cache.get({n, m}, [&] {
    return ExactInt(factorial(m) / factorial(n) * h_inverse_coeff(m - n));
  });
}

/// C_n^m from its defining composition sum (cost 2^(m-n-1) terms).
inline ExactInt C_symbol_by_compositions(int n, int m) {
  if (n < 1 || n > m) throw InvalidArgument("C_symbol: need 1 <= n <= m");
  if (n == m) return 1;
  return factorial(m) / factorial(n) * alternating_composition_sum(m - n);
}

/// f_{n_r}(a) = binomial(2a + n_r, n_r) - 1.
inline ExactInt f_leg(int leg, int a) {
  if (leg < 0 || a < 1) throw InvalidArgument("f_leg: need leg >= 0 and a >= 1");
  return binomial(2L * a + leg, leg) - 1;
}

/// Generalized symbol <C_n^m>_{n_1...n_k}:
///   (m!/n!) sum_{i=k}^{m-n} (-1)^i binomial(i,k)
///           sum_{c in C_i(m-n)} f_{n_1}(a_1)...f_{n_k}(a_k) F(c).
/// Zero when m - n < k. With an empty index it reduces to C_n^m.
inline ExactInt C_symbol_generalized(int n, int m, const MultiIndex& idx) {
  const int k = static_cast<int>(idx.size());
  if (n < 1 || n > m) throw InvalidArgument("C_symbol_generalized: need 1 <= n <= m");
  if (k == 0) return C_symbol(n, m);
  if (m - n < k) return 0;
  ExactInt acc = 0;
  for_each_composition(m - n, k, [&](std::span<const int> parts) {
    const long i = static_cast<long>(parts.size());
    ExactInt term = binomial(i, k) * F(parts);
    for (int r = 0; r < k; ++r) term *= f_leg(idx[static_cast<std::size_t>(r)], parts[static_cast<std::size_t>(r)]);
    if (i % 2) acc -= term; else acc += term;
  });
  return factorial(m) / factorial(n) * acc;
}

/// N_n^(k)/k! - D_n = (2n+k)!/k! - (2n)!.
inline ExactInt leg_difference(int n, int k) {
  return factorial(2L * n + k) / factorial(k) - factorial(2L * n);
}

/// H_m^(N) = sum_{n=1}^m C_n^m [N_n^(N)/N! - D_n].
inline ExactInt H_coeff(int m, int N) {
  if (m < 1 || N < 1) throw InvalidArgument("H_coeff: need m >= 1 and N >= 1");
  static detail::ValueCache<std::pair<int, int>> cache;
  return cache.get({m, N}, [&] {
    ExactInt acc = 0;
    for (int n = 1; n <= m; ++n) acc += C_symbol(n, m) * leg_difference(n, N);
    return acc;
  });
}

/// Multi-index coefficient H_m^{(n_1,...,n_j)}.
///
/// convolution: sum over k_1+...+k_j = m, k_r >= 1, of
///   m!/(k_1!...k_j!) H_{k_1}^{(n_1)} ... H_{k_j}^{(n_j)}.
/// simplified: (-1)^{j+1} sum_{n=1}^{m-j+1} <C_n^m>_{n_1..n_{j-1}}
///   [N_n^{(n_j)}/n_j! - D_n], n_j the largest index.
/// Both return 0 when m < j (empty sum).
inline ExactInt H_multi(int m, const MultiIndex& idx,
                        HMultiMethod method = HMultiMethod::simplified) {
  const int j = static_cast<int>(idx.size());
  if (j < 1) throw InvalidArgument("H_multi: multi-index must be non-empty");
  if (m < j) return 0;
  ExactInt acc = 0;
  if (method == HMultiMethod::convolution) {
    const ExactInt mf = factorial(m);
    for (auto ks : compositions_with_parts(m, j)) {
      ExactInt multinomial = mf;
      ExactInt product = 1;
      for (int r = 0; r < j; ++r) {
        const int k = ks[static_cast<std::size_t>(r)];
        multinomial /= factorial(k);
        product *= H_coeff(k, idx[static_cast<std::size_t>(r)]);
      }
      acc += multinomial * product;
    }
    return acc;
  }
  const MultiIndex rest = idx.without_largest();
  const int top = idx.largest();
  for (int n = 1; n <= m - j + 1; ++n) {
    acc += C_symbol_generalized(n, m, rest) * leg_difference(n, top);
  }
  return (j % 2 == 1) ? acc : ExactInt(-acc);
}

}  // namespace feyncount

#endif  // FEYNCOUNT_COMBINATORICS_HPP
