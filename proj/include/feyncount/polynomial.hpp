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

#ifndef FEYNCOUNT_POLYNOMIAL_HPP
#define FEYNCOUNT_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace feyncount {

// Dense univariate polynomial with exact rational coefficients, lowest
// degree first. Trailing zeros are trimmed, so the zero polynomial has no
// coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<ExactRat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<ExactRat> coeffs) : c_(coeffs) { trim(); }
  // Implicit on purpose: constants mix freely with polynomials.
  Polynomial(const ExactRat& constant) : c_{constant} { trim(); }  // NOLINT
  Polynomial(long constant) : c_{ExactRat(constant)} { trim(); }   // NOLINT

  static Polynomial variable() { return Polynomial({ExactRat(0), ExactRat(1)}); }
  /// a*x + b
  static Polynomial linear(const ExactRat& a, const ExactRat& b) { return Polynomial({b, a}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  ExactRat operator[](int k) const {
    if (k < 0 || k > degree()) return 0;
    return c_[static_cast<std::size_t>(k)];
  }
  ExactRat leading() const { return c_.empty() ? ExactRat(0) : c_.back(); }
  const std::vector<ExactRat>& coeffs() const { return c_; }

  ExactRat operator()(const ExactRat& x) const {
    ExactRat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Composition p(q(x)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Polynomial(*it);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactRat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Exact division; returns {quotient, remainder}.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
    Polynomial rem = *this;
    std::vector<ExactRat> q(static_cast<std::size_t>(std::max(0, degree() - d.degree() + 1)));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      const int shift = rem.degree() - d.degree();
      const ExactRat f = rem.leading() / d.leading();
      q[static_cast<std::size_t>(shift)] = f;
      std::vector<ExactRat> sub(static_cast<std::size_t>(shift) + d.c_.size());
      for (std::size_t k = 0; k < d.c_.size(); ++k) sub[k + static_cast<std::size_t>(shift)] = f * d.c_[k];
      rem -= Polynomial(std::move(sub));
    }
    return {Polynomial(std::move(q)), rem};
  }

  /// Renders in the variable `var`, highest degree first: "4m^2 - 24m - 7".
  std::string str(const std::string& var = "m") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      ExactRat c = c_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      const bool neg = c < 0;
      if (neg) c = -c;
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      if (k == 0 || c != 1) s += to_string(c);
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<ExactRat> c_;
};

// Polynomial in two variables (n, m), stored as sum_i n^i p_i(m).
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  BivariatePolynomial(const Polynomial& in_m) : by_n_power_{in_m} { trim(); }  // NOLINT
  BivariatePolynomial(long constant) : BivariatePolynomial(Polynomial(constant)) {}  // NOLINT

  static BivariatePolynomial n() {
    BivariatePolynomial r;
    r.by_n_power_ = {Polynomial(), Polynomial(1)};
    return r;
  }
  static BivariatePolynomial m() { return BivariatePolynomial(Polynomial::variable()); }
  /// a*n + b
  static BivariatePolynomial linear_n(long a, long b) {
    return n() * BivariatePolynomial(a) + BivariatePolynomial(b);
  }
  /// c_0 + c_1 n + c_2 n^2 + ...
  static BivariatePolynomial in_n(std::initializer_list<long> coeffs) {
    BivariatePolynomial r;
    for (long c : coeffs) r.by_n_power_.push_back(Polynomial(c));
    r.trim();
    return r;
  }

  int degree_n() const { return static_cast<int>(by_n_power_.size()) - 1; }
  bool is_zero() const { return by_n_power_.empty(); }

  ExactRat operator()(const ExactRat& n, const ExactRat& m) const {
    ExactRat acc = 0;
    for (auto it = by_n_power_.rbegin(); it != by_n_power_.rend(); ++it) acc = acc * n + (*it)(m);
    return acc;
  }

  /// Substitutes n := n_of_m, leaving a polynomial in m.
  Polynomial substitute(const Polynomial& n_of_m) const {
    Polynomial acc;
    for (auto it = by_n_power_.rbegin(); it != by_n_power_.rend(); ++it) acc = acc * n_of_m + *it;
    return acc;
  }

  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r = a;
    if (b.by_n_power_.size() > r.by_n_power_.size()) r.by_n_power_.resize(b.by_n_power_.size());
    for (std::size_t i = 0; i < b.by_n_power_.size(); ++i) r.by_n_power_[i] += b.by_n_power_[i];
    r.trim();
    return r;
  }
  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    return a + b * BivariatePolynomial(-1);
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BivariatePolynomial r;
    r.by_n_power_.resize(a.by_n_power_.size() + b.by_n_power_.size() - 1);
    for (std::size_t i = 0; i < a.by_n_power_.size(); ++i) {
      for (std::size_t j = 0; j < b.by_n_power_.size(); ++j) {
        r.by_n_power_[i + j] += a.by_n_power_[i] * b.by_n_power_[j];
      }
    }
    r.trim();
    return r;
  }

 private:
  void trim() {
    while (!by_n_power_.empty() && by_n_power_.back().is_zero()) by_n_power_.pop_back();
  }

  std::vector<Polynomial> by_n_power_;
};

}  // namespace feyncount

#endif  // FEYNCOUNT_POLYNOMIAL_HPP
