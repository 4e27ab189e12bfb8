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

#ifndef FEYNCOUNT_COMPOSITION_HPP
#define FEYNCOUNT_COMPOSITION_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace feyncount {

// An ordered sequence of positive integers with a fixed sum.
class Composition {
 public:
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidArgument("composition needs at least one part");
    for (int a : parts_) {
      if (a < 1) throw InvalidArgument("composition parts must be positive");
      sum_ += a;
    }
  }
  Composition(std::initializer_list<int> parts) : Composition(std::vector<int>(parts)) {}

  std::span<const int> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  int sum() const { return sum_; }
  int operator[](std::size_t i) const { return parts_[i]; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) {
    return a.parts_ <=> b.parts_;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + "}";
  }

 private:
  std::vector<int> parts_;
  int sum_ = 0;
};

// Non-decreasing sequence of positive leg indices (n_1 <= ... <= n_j).
// Index order is irrelevant to every quantity built on it, so the
// constructor sorts.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
    for (int n : indices_) {
      if (n < 1) throw InvalidArgument("multi-index entries must be >= 1");
    }
    std::sort(indices_.begin(), indices_.end());
  }
  MultiIndex(std::initializer_list<int> indices) : MultiIndex(std::vector<int>(indices)) {}

  std::span<const int> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  int operator[](std::size_t i) const { return indices_[i]; }
  int largest() const { return indices_.back(); }
  int total() const { return std::accumulate(indices_.begin(), indices_.end(), 0); }

  // All entries except the largest (the last one after sorting).
  MultiIndex without_largest() const {
    MultiIndex r;
    r.indices_.assign(indices_.begin(), indices_.end() - 1);
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.indices_ <=> b.indices_;
  }

  std::string str() const {
    std::string s;
    for (int n : indices_) s += std::to_string(n);
    return s;
  }

 private:
  std::vector<int> indices_;
};

namespace detail {

// Largest composition of `sum` into `parts` parts in lexicographic order:
// {sum - parts + 1, 1, ..., 1}.
inline void first_composition(std::vector<int>& a, int sum, int parts) {
  a.assign(static_cast<std::size_t>(parts), 1);
  a[0] = sum - parts + 1;
}

// Steps to the lexicographic predecessor with the same length and sum.
inline bool next_composition(std::vector<int>& a) {
  const int len = static_cast<int>(a.size());
  int j = len - 2;
  while (j >= 0 && a[static_cast<std::size_t>(j)] == 1) --j;
  if (j < 0) return false;
  int rest = 1;
  for (int k = j + 1; k < len; ++k) rest += a[static_cast<std::size_t>(k)];
  --a[static_cast<std::size_t>(j)];
  const int tail = len - j - 1;
  a[static_cast<std::size_t>(j + 1)] = rest - (tail - 1);
  for (int k = j + 2; k < len; ++k) a[static_cast<std::size_t>(k)] = 1;
  return true;
}

}  // namespace detail

// Lazy range over compositions of `sum`, ordered by number of parts and,
// within one length, by decreasing lexicographic order:
//   3 -> {3}, {2,1}, {1,2}, {1,1,1}.
// Iterators yield std::span<const int> views of an internal buffer that stay
// valid until the iterator advances.
class CompositionRange {
 public:
  class iterator {
   public:
    using value_type = std::span<const int>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(int sum, int min_parts, int max_parts)
        : sum_(sum), parts_(min_parts), max_parts_(max_parts), done_(min_parts > max_parts) {
      if (!done_) detail::first_composition(buf_, sum_, parts_);
    }

    std::span<const int> operator*() const { return buf_; }
    iterator& operator++() {
      if (!detail::next_composition(buf_)) {
        if (++parts_ > max_parts_) {
          done_ = true;
        } else {
          detail::first_composition(buf_, sum_, parts_);
        }
      }
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    int sum_ = 0;
    int parts_ = 0;
    int max_parts_ = 0;
    bool done_ = true;
    std::vector<int> buf_;
  };

  CompositionRange(int sum, int min_parts, int max_parts)
      : sum_(sum), min_parts_(min_parts), max_parts_(max_parts) {}

  iterator begin() const { return iterator(sum_, min_parts_, max_parts_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int sum_;
  int min_parts_;
  int max_parts_;
};

/// Every composition of m (m >= 1), 2^(m-1) in total.
inline CompositionRange compositions(int m) {
  if (m < 1) throw InvalidArgument("compositions: m must be >= 1");
  return CompositionRange(m, 1, m);
}

/// Compositions of m with exactly i parts, binomial(m-1, i-1) in total.
inline CompositionRange compositions_with_parts(int m, int i) {
  if (m < 1 || i < 1 || i > m) {
    throw InvalidArgument("compositions_with_parts: need 1 <= i <= m");
  }
  return CompositionRange(m, i, i);
}

/// Compositions of m with at least `min_parts` parts. m == 0 yields the
/// single empty composition when min_parts == 0 and nothing otherwise.
template <typename Visitor>
void for_each_composition(int m, int min_parts, Visitor&& visit) {
  if (m == 0) {
    if (min_parts <= 0) visit(std::span<const int>{});
    return;
  }
  for (auto parts : CompositionRange(m, std::max(1, min_parts), m)) visit(parts);
}

/// Partitions of m in reverse-lexicographic order ({m}, {m-1,1}, ...), each
/// as a non-increasing vector. Partitions of 0: one empty partition.
inline std::vector<std::vector<int>> integer_partitions(int m, int max_parts = -1) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    if (max_parts >= 0 && static_cast<int>(cur.size()) == max_parts) return;
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

/// Number of partitions of m.
inline std::size_t partition_count(int m) { return integer_partitions(m).size(); }

}  // namespace feyncount

#endif  // FEYNCOUNT_COMPOSITION_HPP
