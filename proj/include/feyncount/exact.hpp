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

#ifndef FEYNCOUNT_EXACT_HPP
#define FEYNCOUNT_EXACT_HPP

#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace feyncount {

// Arbitrary-precision integers and rationals. mpq_class values produced by
// this library are always canonical (lowest terms, positive denominator).
using ExactInt = mpz_class;
using ExactRat = mpq_class;

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

inline ExactRat make_rat(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  ExactRat r(num, den);
  r.canonicalize();
  return r;
}

inline ExactRat make_rat(long num, long den = 1) {
  return make_rat(ExactInt(num), ExactInt(den));
}

inline bool is_integer(const ExactRat& r) { return r.get_den() == 1; }

inline std::string to_string(const ExactInt& v) { return v.get_str(); }

// Rationals render as "p/q", integers as "p".
inline std::string to_string(const ExactRat& v) {
  if (is_integer(v)) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline ExactInt parse_int(std::string_view text) {
  ExactInt v;
  if (text.empty() || v.set_str(std::string(text), 10) != 0) {
    throw InvalidArgument("not a decimal integer: '" + std::string(text) + "'");
  }
  return v;
}

inline ExactRat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRat(parse_int(text));
  ExactInt den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw InvalidArgument("denominator must be positive");
  return make_rat(parse_int(text.substr(0, slash)), den);
}

namespace detail {

// Append-only table of k!. Readers share the lock; a writer extends the
// prefix. Entries never change once written.
class FactorialTable {
 public:
  FactorialTable() : values_{ExactInt(1)} {}

  ExactInt get(unsigned k) {
    {
      std::shared_lock lock(mu_);
      if (k < values_.size()) return values_[k];
    }
    std::unique_lock lock(mu_);
    while (values_.size() <= k) {
      values_.push_back(values_.back() * static_cast<unsigned long>(values_.size()));
    }
    return values_[k];
  }

 private:
  std::shared_mutex mu_;
  std::vector<ExactInt> values_;
};

inline FactorialTable& factorial_table() {
  static FactorialTable table;
  return table;
}

inline unsigned checked_index(long k, const char* what) {
  if (k < 0) throw InvalidArgument(std::string(what) + " must be non-negative");
  return static_cast<unsigned>(k);
}

}  // namespace detail

/// k! (memoized).
inline ExactInt factorial(long k) {
  return detail::factorial_table().get(detail::checked_index(k, "factorial argument"));
}

/// Binomial coefficient; zero outside 0 <= k <= n.
inline ExactInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  ExactInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline ExactInt sign_power(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

/// Number of all m-order Wick contractions with 2N external legs: (2m+N)!.
/// total_contractions(m, 0) is the vacuum count (2m)!.
inline ExactInt total_contractions(long m, long N) {
  detail::checked_index(m, "order m");
  detail::checked_index(N, "leg parameter N");
  return factorial(2 * m + N);
}

}  // namespace feyncount

#endif  // FEYNCOUNT_EXACT_HPP
