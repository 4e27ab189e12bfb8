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

#ifndef FEYNCOUNT_COUNTS_HPP
#define FEYNCOUNT_COUNTS_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "combinatorics.hpp"
#include "formulas.hpp"
#include "series.hpp"

namespace feyncount {

enum class CountMethod { explicit_formula, series_log, oracle, recurrence };

inline std::string_view method_name(CountMethod m) {
  switch (m) {
    case CountMethod::explicit_formula: return "explicit";
    case CountMethod::series_log: return "series-log";
    case CountMethod::oracle: return "oracle";
    case CountMethod::recurrence: return "recurrence";
  }
  return "?";
}

inline CountMethod parse_method(std::string_view name) {
  if (name == "explicit") return CountMethod::explicit_formula;
  if (name == "series-log") return CountMethod::series_log;
  if (name == "oracle") return CountMethod::oracle;
  if (name == "recurrence") return CountMethod::recurrence;
  throw InvalidArgument("unknown count method '" + std::string(name) + "'");
}

struct CountRecord {
  int N = 0;
  int m = 0;
  CountMethod method = CountMethod::explicit_formula;
  ExactInt value;
};

// Truncation orders for the series-log route.
struct SeriesConfig {
  int x_order = 6;
  int y_order = 14;

  static SeriesConfig covering(int N, int m) {
    SeriesConfig c;
    c.x_order = std::max(c.x_order, N);
    c.y_order = std::max(c.y_order, m);
    return c;
  }
};

namespace detail {

inline ExactInt require_integer(const ExactRat& v, const std::string& what) {
  if (!is_integer(v)) throw IntegralityError(what + " is not an integer: " + to_string(v));
  return v.get_num();
}

// Connected vacuum counts from D_m = sum_{i=1}^m binomial(m-1, i-1) D_c,i D_{m-i}.
class VacuumTable {
 public:
  VacuumTable() : values_{ExactInt(1)} {}

  ExactInt get(unsigned m) {
    {
      std::shared_lock lock(mu_);
      if (m < values_.size()) return values_[m];
    }
    std::unique_lock lock(mu_);
    while (values_.size() <= m) {
      const long k = static_cast<long>(values_.size());
      ExactInt acc = factorial(2 * k);
      for (long i = 1; i < k; ++i) {
        acc -= binomial(k - 1, i - 1) * values_[static_cast<std::size_t>(i)] * factorial(2 * (k - i));
      }
      values_.push_back(acc);
    }
    return values_[m];
  }

 private:
  std::shared_mutex mu_;
  std::vector<ExactInt> values_;
};

class ConnectedTableCache {
 public:
  std::shared_ptr<const ConnectedTable> get(const SeriesConfig& cfg) {
    const auto key = std::make_pair(cfg.x_order, cfg.y_order);
    {
      std::shared_lock lock(mu_);
      if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<const ConnectedTable>(connected_from_log(cfg.x_order, cfg.y_order));
    std::unique_lock lock(mu_);
    return tables_.emplace(key, std::move(table)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::pair<int, int>, std::shared_ptr<const ConnectedTable>> tables_;
};

}  // namespace detail

enum class VacuumMethod { composition_sum, recurrence };

/// Connected vacuum count D_c,m; D_c,0 = 1.
inline ExactInt vacuum_connected(int m, VacuumMethod method = VacuumMethod::recurrence) {
  if (m < 0) throw InvalidArgument("vacuum_connected: m must be >= 0");
  if (m == 0) return 1;
  if (method == VacuumMethod::recurrence) {
    static detail::VacuumTable table;
    return table.get(static_cast<unsigned>(m));
  }
  ExactRat acc = 0;
  for (auto parts : compositions(m)) {
    const long i = static_cast<long>(parts.size());
    acc += make_rat(i % 2 ? 1 : -1, i) * ExactRat(F(parts));
  }
  return detail::require_integer(acc * ExactRat(factorial(m)), "D_c," + std::to_string(m));
}

/// N_c,m^(N) from the printed closed formula, 1 <= N <= 5. Zero for
/// m < N-1; N = 1, m = 0 is the bare propagator and counts 1.
inline ExactInt connected_explicit(int N, int m) {
  const ExactFormula& formula = exact_formula(N);
  if (m < 0) throw InvalidArgument("connected_explicit: m must be >= 0");
  if (m < N - 1) return 0;
  if (m == 0) return 1;
  return detail::require_integer(evaluate_formula(formula, m),
                                 "explicit N_c at N=" + std::to_string(N) + ", m=" + std::to_string(m));
}

/// N_c,m^(N) by the series-log route. Throws SeriesError when the
/// truncation orders do not cover (N, m).
inline ExactInt connected_general(int N, int m, const SeriesConfig& cfg = {}) {
  if (N < 1 || m < 0) throw InvalidArgument("connected_general: need N >= 1 and m >= 0");
  if (N > cfg.x_order || m > cfg.y_order) {
    throw SeriesError("truncation orders (x=" + std::to_string(cfg.x_order) +
                      ", y=" + std::to_string(cfg.y_order) + ") too small for N=" +
                      std::to_string(N) + ", m=" + std::to_string(m));
  }
  static detail::ConnectedTableCache cache;
  return cache.get(cfg)->at(N, m);
}

/// Labeled-leg diagram count N_c,m^(N) / (2^m m!). The caller decides what a
/// non-integer result means; normalized_count_integer enforces integrality.
inline ExactRat normalized_count(int N, int m) {
  const ExactInt nc = connected_general(N, m, SeriesConfig::covering(N, m));
  ExactInt den = factorial(m);
  den <<= static_cast<mp_bitcnt_t>(m);
  return make_rat(nc, den);
}

inline ExactInt normalized_count_integer(int N, int m) {
  return detail::require_integer(normalized_count(N, m),
                                 "normalized count at N=" + std::to_string(N) + ", m=" + std::to_string(m));
}

}  // namespace feyncount

#endif  // FEYNCOUNT_COUNTS_HPP
