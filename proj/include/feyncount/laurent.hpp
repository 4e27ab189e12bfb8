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

#ifndef FEYNCOUNT_LAURENT_HPP
#define FEYNCOUNT_LAURENT_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "exact.hpp"
#include "polynomial.hpp"

namespace feyncount {

// Formal Laurent series in t = 1/m, known exactly for exponents low..order:
//
//   sum_{k=low}^{order} c_k t^k + O(t^{order+1}).
//
// `order` is absolute. Products track precision: if a has valuation va and
// order oa, and b likewise, a*b is exact through min(oa + vb, ob + va).
class LaurentSeries {
 public:
  LaurentSeries() = default;
  /// Zero series known through t^order.
  explicit LaurentSeries(int order) : low_(order + 1), order_(order) {}
  LaurentSeries(int low, std::vector<ExactRat> coeffs, int order)
      : low_(low), order_(order), c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(std::max(0, order_ - low_ + 1)));
    normalize();
  }

  static LaurentSeries constant(const ExactRat& c, int order) {
    return LaurentSeries(0, {c}, order);
  }
  /// c * t^k
  static LaurentSeries monomial(const ExactRat& c, int k, int order) {
    return LaurentSeries(k, {c}, order);
  }

  int order() const { return order_; }
  bool is_zero() const { return c_.empty(); }
  /// Exponent of the first non-zero coefficient (order+1 when zero).
  int valuation() const { return low_; }
  ExactRat operator[](int k) const {
    if (k < low_ || k > order_) return 0;
    return c_[static_cast<std::size_t>(k - low_)];
  }
  ExactRat leading() const { return is_zero() ? ExactRat(0) : c_.front(); }

  /// Coefficients for exponents from..to inclusive.
  std::vector<ExactRat> coefficients(int from, int to) const {
    std::vector<ExactRat> out;
    for (int k = from; k <= to; ++k) out.push_back((*this)[k]);
    return out;
  }

  LaurentSeries truncated(int order) const {
    LaurentSeries r = *this;
    r.order_ = std::min(order, order_);
    r.c_.resize(static_cast<std::size_t>(std::max(0, r.order_ - r.low_ + 1)));
    r.normalize();
    return r;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) {
    const int new_order = std::min(order_, o.order_);
    const int new_low = std::min(low_, o.low_);
    std::vector<ExactRat> r(static_cast<std::size_t>(std::max(0, new_order - new_low + 1)));
    for (int k = new_low; k <= new_order; ++k) r[static_cast<std::size_t>(k - new_low)] = (*this)[k] + o[k];
    *this = LaurentSeries(new_low, std::move(r), new_order);
    return *this;
  }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this += o * ExactRat(-1); }
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }

  friend LaurentSeries operator*(LaurentSeries a, const ExactRat& s) {
    for (auto& c : a.c_) c *= s;
    a.normalize();
    return a;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.is_zero() || b.is_zero()) {
      return LaurentSeries(std::min(a.order_ + std::max(b.low_, 0), b.order_ + std::max(a.low_, 0)));
    }
    const int order = std::min(a.order_ + b.low_, b.order_ + a.low_);
    const int low = a.low_ + b.low_;
    std::vector<ExactRat> r(static_cast<std::size_t>(std::max(0, order - low + 1)));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) + low <= order; ++j) {
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return LaurentSeries(low, std::move(r), order);
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.order_ != b.order_) return false;
    const int lo = std::min(a.low_, b.low_);
    for (int k = lo; k <= a.order_; ++k) {
      if (a[k] != b[k]) return false;
    }
    return true;
  }

  /// Evaluates the truncated sum at t = 1/m.
  ExactRat evaluate_at(const ExactRat& m) const {
    ExactRat acc = 0;
    const ExactRat t = 1 / m;
    for (int k = order_; k >= low_; --k) acc = acc * t + (*this)[k];
    if (low_ >= 0) {
      for (int k = 0; k < low_; ++k) acc *= t;
    } else {
      for (int k = 0; k < -low_; ++k) acc *= m;
    }
    return acc;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = low_; k <= order_; ++k) {
      ExactRat c = (*this)[k];
      if (c == 0) continue;
      const bool neg = c < 0;
      if (neg) c = -c;
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (k == 0 || c != 1) s += to_string(c) + (k != 0 ? "*" : "");
      if (k != 0) s += (k == 1) ? "t" : "t^" + std::to_string(k);
    }
    return s;
  }

 private:
  // Strips leading zeros so low_ is the true valuation.
  void normalize() {
    std::size_t z = 0;
    while (z < c_.size() && c_[z] == 0) ++z;
    if (z == c_.size()) {
      c_.clear();
      low_ = order_ + 1;
      return;
    }
    if (z > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
      low_ += static_cast<int>(z);
    }
  }

  int low_ = 1;
  int order_ = 0;
  std::vector<ExactRat> c_;
};

/// Reciprocal of a series with non-zero leading coefficient.
inline LaurentSeries laurent_inverse(const LaurentSeries& a) {
  if (a.is_zero()) throw InvalidArgument("laurent_inverse of zero");
  const int v = a.valuation();
  const int len = a.order() - v + 1;  // relative precision
  std::vector<ExactRat> r(static_cast<std::size_t>(len));
  const ExactRat inv0 = 1 / a.leading();
  for (int k = 0; k < len; ++k) {
    ExactRat acc = (k == 0) ? ExactRat(1) : ExactRat(0);
    for (int j = 1; j <= k; ++j) acc -= a[v + j] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = acc * inv0;
  }
  return LaurentSeries(-v, std::move(r), -v + len - 1);
}

/// exp of a series with zero constant term and no negative powers.
inline LaurentSeries laurent_exp(const LaurentSeries& a) {
  if (a.valuation() < 1) throw InvalidArgument("laurent_exp needs a series in t with zero constant term");
  const int n = a.order();
  std::vector<ExactRat> r(static_cast<std::size_t>(n + 1));
  r[0] = 1;
  for (int k = 1; k <= n; ++k) {
    ExactRat acc = 0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = acc / k;
  }
  return LaurentSeries(0, std::move(r), n);
}

/// Expansion of num(m)/den(m) in t = 1/m, exact through t^order.
inline LaurentSeries laurent_from_rational(const Polynomial& num, const Polynomial& den, int order) {
  if (den.is_zero()) throw InvalidArgument("rational function with zero denominator");
  if (num.is_zero()) return LaurentSeries(order);
  // num(m) = m^a * rev_num(t), den(m) = m^b * rev_den(t).
  const int a = num.degree();
  const int b = den.degree();
  const int v = b - a;
  const int len = order - v + 1;
  if (len <= 0) return LaurentSeries(order);
  std::vector<ExactRat> r(static_cast<std::size_t>(len));
  const ExactRat inv0 = 1 / den[b];
  for (int k = 0; k < len; ++k) {
    ExactRat acc = num[a - k];
    for (int j = 1; j <= k && j <= b; ++j) acc -= den[b - j] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = acc * inv0;
  }
  return LaurentSeries(v, std::move(r), order);
}

inline LaurentSeries laurent_from_polynomial(const Polynomial& p, int order) {
  return laurent_from_rational(p, Polynomial(1), order);
}

}  // namespace feyncount

#endif  // FEYNCOUNT_LAURENT_HPP
