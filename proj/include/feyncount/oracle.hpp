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

#ifndef FEYNCOUNT_ORACLE_HPP
#define FEYNCOUNT_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "exact.hpp"
#include "series.hpp"

// Brute-force referee. A Wick contraction of order m with 2N external legs is
// a bijection from out-slots to in-slots:
//
//   out-slots: 2 per vertex (2m) + 1 per source (N)
//   in-slots:  2 per vertex (2m) + 1 per sink   (N)
//
// Each bijection induces a multigraph on m vertex nodes, N source nodes and N
// sink nodes (one edge per out-slot). The oracle counts bijections whose graph
// is connected and divides by N!, which is the normalization under which the
// generating-function counts place N_c,m^(N) against x^N/N!.

namespace feyncount {

inline constexpr std::uint64_t kDefaultOracleBudget = 4'000'000;

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const ExactInt& required, std::uint64_t budget)
      : Error("oracle needs " + required.get_str() + " permutations but the budget is " +
              std::to_string(budget) + " (raise it with --budget)"),
        required_(required) {}
  const ExactInt& required() const { return required_; }

 private:
  ExactInt required_;
};

struct OracleOptions {
  std::uint64_t budget = kDefaultOracleBudget;
  unsigned jobs = 1;
};

class SlotModel {
 public:
  SlotModel(int m, int N) : m_(m), N_(N) {
    if (m < 0 || N < 0) throw InvalidArgument("SlotModel: need m >= 0 and N >= 0");
    for (int v = 0; v < m; ++v) {
      out_owner_.insert(out_owner_.end(), {v, v});
      in_owner_.insert(in_owner_.end(), {v, v});
    }
    for (int k = 0; k < N; ++k) {
      out_owner_.push_back(m + k);
      in_owner_.push_back(m + N + k);
    }
  }

  /// Same model with slots listed in a different order.
  SlotModel relabeled(const std::vector<int>& out_order, const std::vector<int>& in_order) const {
    SlotModel r = *this;
    for (std::size_t i = 0; i < out_owner_.size(); ++i) {
      r.out_owner_[i] = out_owner_.at(static_cast<std::size_t>(out_order.at(i)));
      r.in_owner_[i] = in_owner_.at(static_cast<std::size_t>(in_order.at(i)));
    }
    return r;
  }

  int m() const { return m_; }
  int N() const { return N_; }
  int slot_count() const { return 2 * m_ + N_; }
  int node_count() const { return m_ + 2 * N_; }
  const std::vector<int>& out_owner() const { return out_owner_; }
  const std::vector<int>& in_owner() const { return in_owner_; }

 private:
  int m_;
  int N_;
  std::vector<int> out_owner_;
  std::vector<int> in_owner_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { reset(); }

  void reset() {
    std::iota(parent_.begin(), parent_.end(), 0);
    components_ = static_cast<int>(parent_.size());
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[static_cast<std::size_t>(a)] = b;
      --components_;
    }
  }
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  int components_ = 0;
};

inline void check_budget(const SlotModel& model, std::uint64_t budget) {
  const ExactInt required = factorial(model.slot_count());
  if (required > ExactInt(static_cast<unsigned long>(budget))) throw BudgetExceeded(required, budget);
}

struct Tally {
  std::uint64_t total = 0;
  std::uint64_t connected = 0;
};

// Enumerates, in lexicographic order, every bijection whose image of out-slot
// 0 is `first`.
inline Tally enumerate_with_first(const SlotModel& model, int first) {
  const int k = model.slot_count();
  std::vector<int> sigma;
  sigma.reserve(static_cast<std::size_t>(k));
  sigma.push_back(first);
  for (int j = 0; j < k; ++j) {
    if (j != first) sigma.push_back(j);
  }
  const auto& out = model.out_owner();
  const auto& in = model.in_owner();
  UnionFind uf(model.node_count());
  Tally t;
  do {
    uf.reset();
    for (int o = 0; o < k; ++o) {
      uf.unite(out[static_cast<std::size_t>(o)], in[static_cast<std::size_t>(sigma[static_cast<std::size_t>(o)])]);
    }
    ++t.total;
    if (uf.components() == 1) ++t.connected;
  } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
  return t;
}

inline Tally enumerate(const SlotModel& model, unsigned jobs) {
  const int k = model.slot_count();
  if (k == 0) return {1, model.node_count() <= 1 ? 1u : 0u};
  std::vector<Tally> per_first(static_cast<std::size_t>(k));
  jobs = std::max(1u, std::min(jobs, static_cast<unsigned>(k)));
  if (jobs == 1) {
    for (int f = 0; f < k; ++f) per_first[static_cast<std::size_t>(f)] = enumerate_with_first(model, f);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (int f = static_cast<int>(w); f < k; f += static_cast<int>(jobs)) {
          per_first[static_cast<std::size_t>(f)] = enumerate_with_first(model, f);
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  Tally sum;
  for (const auto& t : per_first) {
    sum.total += t.total;
    sum.connected += t.connected;
  }
  return sum;
}

}  // namespace detail

/// Number of all bijections, which must equal (2m+N)!.
inline ExactInt brute_force_total(int m, int N, const OracleOptions& opts = {}) {
  SlotModel model(m, N);
  detail::check_budget(model, opts.budget);
  return ExactInt(static_cast<unsigned long>(detail::enumerate(model, opts.jobs).total));
}

/// Connected bijections divided by N!. The vacuum m = 0 case is 1 by
/// convention.
inline ExactInt brute_force_connected(const SlotModel& model, const OracleOptions& opts = {}) {
  if (model.m() == 0 && model.N() == 0) return 1;
  detail::check_budget(model, opts.budget);
  const ExactInt raw(static_cast<unsigned long>(detail::enumerate(model, opts.jobs).connected));
  const ExactInt legs = factorial(model.N());
  if (raw % legs != 0) {
    throw IntegralityError("connected bijection count " + raw.get_str() + " not divisible by N!");
  }
  return raw / legs;
}

inline ExactInt brute_force_connected(int m, int N, const OracleOptions& opts = {}) {
  return brute_force_connected(SlotModel(m, N), opts);
}

}  // namespace feyncount

#endif  // FEYNCOUNT_ORACLE_HPP
