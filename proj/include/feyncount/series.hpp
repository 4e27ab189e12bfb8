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

#ifndef FEYNCOUNT_SERIES_HPP
#define FEYNCOUNT_SERIES_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "exact.hpp"

namespace feyncount {

class SeriesError : public Error {
 public:
  using Error::Error;
};

// Raised when a computed count that must be an integer is not. Always a bug.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

// Formal power series in one variable, truncated after y^order.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order) : coeffs_(checked_size(order)) {}
  TruncatedSeries(int order, std::vector<ExactRat> coeffs) : coeffs_(checked_size(order)) {
    if (coeffs.size() > coeffs_.size()) throw SeriesError("more coefficients than order allows");
    std::move(coeffs.begin(), coeffs.end(), coeffs_.begin());
  }

  static TruncatedSeries constant(int order, const ExactRat& c) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const ExactRat& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  ExactRat& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<ExactRat>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  TruncatedSeries& operator*=(const ExactRat& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const ExactRat& s) { return a *= s; }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  void require_same_order(const TruncatedSeries& o) const {
    if (o.order() != order()) {
      throw SeriesError("truncation order mismatch: " + std::to_string(order()) + " vs " +
                        std::to_string(o.order()));
    }
  }

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw SeriesError("truncation order must be >= 0");
    return static_cast<std::size_t>(order) + 1;
  }

  std::vector<ExactRat> coeffs_;
};

/// Cauchy product truncated at the common order.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_same_order(b);
  const int n = a.order();
  TruncatedSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_mul(a, b);
}

/// Multiplicative inverse; the constant term must be non-zero.
inline TruncatedSeries series_inverse(const TruncatedSeries& a) {
  if (a[0] == 0) throw SeriesError("series_inverse: constant term is zero");
  const int n = a.order();
  TruncatedSeries r(n);
  const ExactRat inv0 = 1 / a[0];
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    ExactRat acc = 0;
    for (int j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -acc * inv0;
  }
  return r;
}

/// Formal logarithm; requires constant term 1.
inline TruncatedSeries series_log(const TruncatedSeries& a) {
  if (a[0] != 1) throw SeriesError("series_log: constant term must be 1");
  const int n = a.order();
  TruncatedSeries r(n);
  // a * r' = a'
  for (int k = 1; k <= n; ++k) {
    ExactRat acc = 0;
    for (int j = 1; j < k; ++j) acc += j * r[j] * a[k - j];
    r[k] = a[k] - acc / k;
  }
  return r;
}

/// Formal exponential; requires constant term 0.
inline TruncatedSeries series_exp(const TruncatedSeries& a) {
  if (a[0] != 0) throw SeriesError("series_exp: constant term must be 0");
  const int n = a.order();
  TruncatedSeries r(n);
  r[0] = 1;
  // r' = a' r
  for (int k = 1; k <= n; ++k) {
    ExactRat acc = 0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * r[k - j];
    r[k] = acc / k;
  }
  return r;
}

/// g(y) = sum_m D_m y^m / m! = sum_m (2m)!/m! y^m.
inline TruncatedSeries g_series(int order) {
  TruncatedSeries s(order);
  for (int m = 0; m <= order; ++m) s[m] = ExactRat(part_weight(m));
  return s;
}

/// g^{-1}(y) = sum_m h_m y^m.
inline TruncatedSeries g_inverse_series(int order) {
  TruncatedSeries s(order);
  for (int m = 0; m <= order; ++m) s[m] = ExactRat(h_inverse_coeff(m));
  return s;
}

// Bivariate series truncated after x^x_order and y^y_order, stored as one
// TruncatedSeries in y per power of x.
class BivariateTruncatedSeries {
 public:
  BivariateTruncatedSeries(int x_order, int y_order) {
    if (x_order < 0 || y_order < 0) throw SeriesError("truncation orders must be >= 0");
    rows_.assign(static_cast<std::size_t>(x_order) + 1, TruncatedSeries(y_order));
  }

  int x_order() const { return static_cast<int>(rows_.size()) - 1; }
  int y_order() const { return rows_.front().order(); }

  const TruncatedSeries& row(int N) const { return rows_.at(static_cast<std::size_t>(N)); }
  TruncatedSeries& row(int N) { return rows_.at(static_cast<std::size_t>(N)); }
  const ExactRat& coeff(int N, int m) const { return row(N)[m]; }
  ExactRat& coeff(int N, int m) { return row(N)[m]; }

  BivariateTruncatedSeries& operator+=(const BivariateTruncatedSeries& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] += o.rows_[i];
    return *this;
  }
  BivariateTruncatedSeries& operator*=(const ExactRat& s) {
    for (auto& r : rows_) r *= s;
    return *this;
  }

  void require_same_shape(const BivariateTruncatedSeries& o) const {
    if (o.x_order() != x_order() || o.y_order() != y_order()) {
      throw SeriesError("bivariate truncation mismatch");
    }
  }

 private:
  std::vector<TruncatedSeries> rows_;
};

inline BivariateTruncatedSeries series_mul(const BivariateTruncatedSeries& a,
                                           const BivariateTruncatedSeries& b) {
  a.require_same_shape(b);
  const int nx = a.x_order();
  BivariateTruncatedSeries r(nx, a.y_order());
  for (int i = 0; i <= nx; ++i) {
    if (a.row(i).is_zero()) continue;
    for (int j = 0; i + j <= nx; ++j) r.row(i + j) += series_mul(a.row(i), b.row(j));
  }
  return r;
}

/// Z(x,y) with [x^N y^m] = (2m+N)! / (N! N! m!).
inline BivariateTruncatedSeries build_Z(int x_order, int y_order) {
  BivariateTruncatedSeries z(x_order, y_order);
  for (int N = 0; N <= x_order; ++N) {
    for (int m = 0; m <= y_order; ++m) {
      z.coeff(N, m) = make_rat(total_contractions(m, N), factorial(N) * factorial(N) * factorial(m));
    }
  }
  return z;
}

/// log Z for a Z whose x^0 row has constant term 1. Z is factored as
/// Z = Z_0(y) (1 + S(x,y)) with S free of x^0, so log(1+S) terminates after
/// x_order powers. Row 0 of the result is log Z_0.
inline BivariateTruncatedSeries log_factored(const BivariateTruncatedSeries& z) {
  const int nx = z.x_order();
  const int ny = z.y_order();
  BivariateTruncatedSeries s(nx, ny);
  const TruncatedSeries z0_inv = series_inverse(z.row(0));
  for (int N = 1; N <= nx; ++N) s.row(N) = series_mul(z0_inv, z.row(N));

  BivariateTruncatedSeries w(nx, ny);
  BivariateTruncatedSeries power = s;
  for (int k = 1; k <= nx; ++k) {
    BivariateTruncatedSeries term = power;
    term *= make_rat(k % 2 ? 1 : -1, k);
    w += term;
    if (k < nx) power = series_mul(power, s);
  }
  w.row(0) = series_log(z.row(0));
  return w;
}

// Exact integer table N_c,m^(N), N = 1..x_order, m = 0..y_order.
class ConnectedTable {
 public:
  ConnectedTable(int x_order, int y_order)
      : x_order_(x_order), y_order_(y_order),
        values_(static_cast<std::size_t>(x_order) * static_cast<std::size_t>(y_order + 1)) {}

  int x_order() const { return x_order_; }
  int y_order() const { return y_order_; }

  bool covers(int N, int m) const { return N >= 1 && N <= x_order_ && m >= 0 && m <= y_order_; }

  const ExactInt& at(int N, int m) const {
    if (!covers(N, m)) {
      throw SeriesError("connected table of orders (" + std::to_string(x_order_) + ", " +
                        std::to_string(y_order_) + ") does not cover N=" + std::to_string(N) +
                        ", m=" + std::to_string(m));
    }
    return values_[index(N, m)];
  }
  ExactInt& set(int N, int m) { return values_[index(N, m)]; }

 private:
  std::size_t index(int N, int m) const {
    return static_cast<std::size_t>(N - 1) * static_cast<std::size_t>(y_order_ + 1) +
           static_cast<std::size_t>(m);
  }

  int x_order_;
  int y_order_;
  std::vector<ExactInt> values_;
};

/// N_c,m^(N) = N! m! [x^N y^m] log(1 + S), where Z = g (1 + S).
inline ConnectedTable connected_from_log(int x_order, int y_order) {
  if (x_order < 1 || y_order < 0) throw SeriesError("connected_from_log: need x_order >= 1");
  const BivariateTruncatedSeries w = log_factored(build_Z(x_order, y_order));
  ConnectedTable table(x_order, y_order);
  for (int N = 1; N <= x_order; ++N) {
    for (int m = 0; m <= y_order; ++m) {
      const ExactRat v = w.coeff(N, m) * ExactRat(factorial(N) * factorial(m));
      if (!is_integer(v)) {
        throw IntegralityError("non-integer connected count at N=" + std::to_string(N) +
                               ", m=" + std::to_string(m) + ": " + to_string(v));
      }
      table.set(N, m) = v.get_num();
    }
  }
  return table;
}

/// m! [y^m] log g(y) for m = 0..order; entry 0 is replaced by the
/// D_c,0 = 1 convention.
inline std::vector<ExactInt> vacuum_from_log(int order) {
  const TruncatedSeries w = series_log(g_series(order));
  std::vector<ExactInt> out{ExactInt(1)};
  for (int m = 1; m <= order; ++m) {
    const ExactRat v = w[m] * ExactRat(factorial(m));
    if (!is_integer(v)) throw IntegralityError("non-integer vacuum count at m=" + std::to_string(m));
    out.push_back(v.get_num());
  }
  return out;
}

}  // namespace feyncount

#endif  // FEYNCOUNT_SERIES_HPP
