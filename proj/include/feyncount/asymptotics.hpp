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

#ifndef FEYNCOUNT_ASYMPTOTICS_HPP
#define FEYNCOUNT_ASYMPTOTICS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "composition.hpp"
#include "exact.hpp"
#include "formulas.hpp"
#include "laurent.hpp"
#include "polynomial.hpp"

namespace feyncount {

class AsymptoticError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Bernoulli numbers and polynomials.

/// B_n with the convention B_1 = -1/2.
inline ExactRat bernoulli(int n) {
  static std::mutex mu;
  static std::vector<ExactRat> table{ExactRat(1)};
  if (n < 0) throw InvalidArgument("bernoulli index must be >= 0");
  std::lock_guard<std::mutex> lock(mu);
  for (int k = static_cast<int>(table.size()); k <= n; ++k) {
    ExactRat acc = 0;
    for (int j = 0; j < k; ++j) acc += ExactRat(binomial(k + 1, j)) * table[static_cast<std::size_t>(j)];
    table.push_back(-acc / (k + 1));
  }
  return table[static_cast<std::size_t>(n)];
}

inline ExactRat bernoulli_polynomial(int n, const ExactRat& x) {
  ExactRat acc = 0;
  ExactRat power = 1;  // x^(n-k), built from k = n downwards
  for (int k = n; k >= 0; --k) {
    acc += ExactRat(binomial(n, k)) * bernoulli(k) * power;
    power *= x;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Values of the form a + b*sqrt(r), used for exact evaluation of prefactors.

namespace detail {

/// Splits a positive integer into s^2 * f with f squarefree; returns {s, f}.
inline std::pair<ExactInt, ExactInt> square_split(ExactInt v) {
  ExactInt s = 1, f = 1;
  for (ExactInt p = 2; p * p <= v; ++p) {
    const ExactInt sq = p * p;
    while (v % sq == 0) {
      v /= sq;
      s *= p;
    }
    if (v % p == 0) {
      v /= p;
      f *= p;
    }
  }
  return {s, f * v};
}

inline int sign_of(const ExactRat& x) { return (x > 0) - (x < 0); }

inline ExactRat rat_pow(const ExactRat& base, long e) {
  ExactRat r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= base;
  return e >= 0 ? r : ExactRat(1 / r);
}

}  // namespace detail

struct SurdValue {
  ExactRat rational = 0;
  ExactRat irrational = 0;  // coefficient of sqrt(radicand)
  ExactInt radicand = 1;    // squarefree; 1 means no surd part

  static SurdValue of(const ExactRat& a) { return {a, 0, 1}; }

  int sign() const {
    const int sa = detail::sign_of(rational);
    const int sb = detail::sign_of(irrational);
    if (sb == 0 || radicand == 1) return detail::sign_of(rational + (radicand == 1 ? irrational : ExactRat(0)));
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 r.
    const ExactRat a2 = rational * rational;
    const ExactRat b2r = irrational * irrational * ExactRat(radicand);
    if (a2 == b2r) return 0;
    return a2 > b2r ? sa : sb;
  }

  SurdValue& operator+=(const SurdValue& o) {
    if (o.irrational != 0 && o.radicand != 1) {
      if (irrational != 0 && radicand != 1 && radicand != o.radicand) {
        throw AsymptoticError("cannot add values with different square-root radicands");
      }
      radicand = o.radicand;
      irrational += o.irrational;
    } else {
      rational += o.irrational;
    }
    rational += o.rational;
    return *this;
  }
  friend SurdValue operator+(SurdValue a, const SurdValue& b) { return a += b; }
  friend SurdValue operator-(SurdValue a) {
    a.rational = -a.rational;
    a.irrational = -a.irrational;
    return a;
  }
  friend SurdValue operator-(const SurdValue& a, const SurdValue& b) { return a + (-b); }
  friend SurdValue operator*(const SurdValue& a, const SurdValue& b) {
    ExactInt r = a.radicand;
    if (a.irrational == 0 || a.radicand == 1) r = b.radicand;
    else if (b.irrational != 0 && b.radicand != 1 && b.radicand != a.radicand) {
      throw AsymptoticError("cannot multiply values with different square-root radicands");
    }
    const SurdValue an = a.radicand == 1 ? SurdValue{a.rational + a.irrational, 0, 1} : a;
    const SurdValue bn = b.radicand == 1 ? SurdValue{b.rational + b.irrational, 0, 1} : b;
    SurdValue out;
    out.radicand = r;
    out.rational = an.rational * bn.rational + an.irrational * bn.irrational * ExactRat(r);
    out.irrational = an.rational * bn.irrational + an.irrational * bn.rational;
    return out;
  }
  /// Exact test of |*this| < |o|, via (|o| - |x|)(|o| + |x|) = o^2 - x^2 > 0.
  bool abs_less(const SurdValue& o) const { return (o * o - *this * *this).sign() > 0; }

  /// Rational approximation for display; `digits` decimal places.
  std::string approx(int digits = 12) const {
    mpf_class a(rational.get_d(), 256);
    mpf_class r(0, 256);
    mpf_set_q(a.get_mpf_t(), rational.get_mpq_t());
    if (irrational != 0) {
      mpf_class b(0, 256), s(0, 256);
      mpf_set_q(b.get_mpf_t(), irrational.get_mpq_t());
      mpf_set_z(s.get_mpf_t(), radicand.get_mpz_t());
      mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
      r = b * s;
    }
    a += r;
    mp_exp_t exp;
    std::string digits_str = a.get_str(exp, 10, static_cast<std::size_t>(digits));
    if (digits_str.empty()) return "0";
    std::string sign;
    if (digits_str[0] == '-') {
      sign = "-";
      digits_str.erase(0, 1);
    }
    std::string mant = digits_str.substr(0, 1);
    if (digits_str.size() > 1) mant += "." + digits_str.substr(1);
    return sign + mant + "e" + std::to_string(exp - 1);
  }
};

// ---------------------------------------------------------------------------
// Prefactors.

/// sign * scalar * sqrt(radicand) * [(2m)!] * prod(factors) * m^m_power * geometric^m.
struct AsymptoticPrefactor {
  int sign = 1;
  ExactRat scalar = 1;
  ExactInt radicand = 1;
  ExactRat geometric = 1;
  bool factorial_2m = false;
  std::vector<Polynomial> factors;
  int m_power = 0;

  /// Integer n when geometric == 1/n.
  std::optional<ExactInt> geometric_base() const {
    const ExactRat inv = 1 / geometric;
    if (!is_integer(inv)) return std::nullopt;
    return inv.get_num();
  }

  Polynomial polynomial() const {
    Polynomial p(1);
    for (const auto& f : factors) p *= f;
    return p;
  }

  /// Value at a concrete m.
  SurdValue evaluate(long m) const {
    ExactRat v = scalar * sign;
    if (factorial_2m) v *= ExactRat(factorial(2 * m));
    v *= polynomial()(ExactRat(m));
    v *= detail::rat_pow(ExactRat(m), m_power);
    v *= detail::rat_pow(geometric, m);
    if (radicand == 1) return SurdValue::of(v);
    return {0, v, radicand};
  }

  /// Rendered as e.g. "-5/12 * sqrt(2) * (2m)! * m(2m - 1)(2m - 2) / 2^m".
  std::string str() const {
    std::vector<std::string> parts;
    const bool bare = radicand == 1 && !factorial_2m && factors.empty() && m_power == 0;
    if (scalar != 1 || bare) parts.push_back(to_string(scalar));
    if (radicand != 1) parts.push_back("sqrt(" + to_string(radicand) + ")");
    if (factorial_2m) parts.push_back("(2m)!");
    std::string poly;
    for (const auto& f : factors) {
      const bool is_m = f.degree() == 1 && f[0] == 0 && f[1] == 1;
      poly += is_m ? "m" : "(" + f.str() + ")";
    }
    if (m_power != 0) poly += (poly.empty() ? "" : " ") + std::string("m^") + std::to_string(m_power);
    if (!poly.empty()) parts.push_back(poly);
    std::string s = sign < 0 ? "-" : "";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " * " : "") + parts[i];
    if (geometric != 1) {
      if (auto b = geometric_base()) s += " / " + to_string(*b) + "^m";
      else s += " * (" + to_string(geometric) + ")^m";
    }
    return s;
  }
};

/// Compares prefactors as functions of m.
inline bool same_prefactor(const AsymptoticPrefactor& a, const AsymptoticPrefactor& b) {
  if (a.sign != b.sign || a.radicand != b.radicand || a.geometric != b.geometric ||
      a.factorial_2m != b.factorial_2m) {
    return false;
  }
  // scalar * poly * m^e, compared after moving m-powers across.
  Polynomial pa = a.polynomial() * Polynomial(a.scalar);
  Polynomial pb = b.polynomial() * Polynomial(b.scalar);
  const int shift = a.m_power - b.m_power;
  for (int i = 0; i < shift; ++i) pa *= Polynomial::variable();
  for (int i = 0; i < -shift; ++i) pb *= Polynomial::variable();
  return pa == pb;
}

/// Splits p into scalar * prod(linear factors) * residual, for display.
/// Root 0 becomes m; a root r with 2r integral becomes (2m - 2r).
inline std::pair<ExactRat, std::vector<Polynomial>> factor_linear(Polynomial p) {
  if (p.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  std::vector<Polynomial> out;
  ExactRat scalar = 1;
  bool found = true;
  while (p.degree() >= 1 && found) {
    found = false;
    const int bound = 8 * (p.degree() + 2);
    for (int d = 1; d <= 6 && !found; ++d) {
      for (int j = -bound * d; j <= bound * d && !found; ++j) {
        const ExactRat r = make_rat(j, d);
        if (r.get_den() != d || p(r) != 0) continue;
        Polynomial f;
        if (r == 0) f = Polynomial::variable();
        else if (is_integer(2 * r)) f = Polynomial::linear(2, -2 * r);
        else f = Polynomial::linear(ExactRat(r.get_den()), -ExactRat(r.get_num()));
        auto [q, rem] = p.divmod(f);
        if (!rem.is_zero()) continue;
        p = q;
        out.push_back(f);
        found = true;
      }
    }
  }
  if (p.degree() >= 1) {
    scalar = p.leading();
    out.push_back(p * Polynomial(1 / scalar));
  } else {
    scalar = p[0];
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a[0] > b[0];
  });
  return {scalar, out};
}

// ---------------------------------------------------------------------------
// Stirling expansion of Gamma-function ratios.

/// Coefficient of z^-k in the Stirling tail of log Gamma(z + a).
inline ExactRat stirling_tail_coefficient(long a, int k) {
  if (k < 1) throw InvalidArgument("Stirling tail starts at k = 1");
  const ExactRat c = bernoulli_polynomial(k + 1, ExactRat(a)) / (ExactRat(k) * (k + 1));
  return k % 2 == 1 ? c : ExactRat(-c);
}

/// Gamma(scale*m + offset)^power.
struct StirlingShift {
  ExactRat scale;
  long offset = 0;
  int power = 1;
};

struct LogGammaExpansion {
  AsymptoticPrefactor prefactor;  // constants, geometric^m, m^m_power
  LaurentSeries unit;             // 1 + O(t)
};

/// Expansion of prod Gamma(s*m + a)^power as m -> infinity, from
///   log Gamma(z + a) ~ (z + a - 1/2) log z - z + log(2 pi)/2
///                      + sum_k (-1)^(k+1) B_{k+1}(a) / (k (k+1) z^k).
inline LogGammaExpansion loggamma_ratio_series(const std::vector<StirlingShift>& shifts, int order) {
  if (order < 0) throw InvalidArgument("order must be >= 0");
  std::map<ExactRat, ExactRat> scale_weight;   // sum of power per scale
  std::map<ExactRat, ExactRat> scale_log;      // sum of power*(a - 1/2) per scale
  ExactRat m_log_m = 0, log_m = 0;
  long gamma_count = 0;
  std::vector<ExactRat> c(static_cast<std::size_t>(order + 1));
  for (const auto& sh : shifts) {
    if (sh.scale <= 0) throw InvalidArgument("Stirling shift scale must be positive");
    if (sh.power == 0) continue;
    const ExactRat a(sh.offset);
    m_log_m += sh.power * sh.scale;
    log_m += sh.power * (a - make_rat(1, 2));
    scale_weight[sh.scale] += sh.power * sh.scale;
    scale_log[sh.scale] += sh.power * (a - make_rat(1, 2));
    gamma_count += sh.power;
    ExactRat s_pow = 1;
    for (int k = 1; k <= order; ++k) {
      s_pow *= sh.scale;
      c[static_cast<std::size_t>(k)] += sh.power * stirling_tail_coefficient(sh.offset, k) / s_pow;
    }
  }
  if (m_log_m != 0) {
    throw AsymptoticError("m log m terms do not cancel (residue " + to_string(m_log_m) +
                          "); the family and prefactor do not match");
  }
  if (gamma_count != 0) {
    throw AsymptoticError("log(2 pi) terms do not cancel; unequal numbers of Gamma factors");
  }
  if (!is_integer(log_m)) throw AsymptoticError("fractional power of m in Gamma ratio");

  LogGammaExpansion out;
  // Geometric factor prod s^(power*s*m).
  ExactRat geometric = 1;
  for (const auto& [s, w] : scale_weight) {
    if (!is_integer(w)) throw AsymptoticError("irrational geometric factor in Gamma ratio");
    geometric *= detail::rat_pow(s, w.get_num().get_si());
  }
  // Constant prod s^(power*(a - 1/2)).
  ExactRat rational = 1, under_root = 1;
  for (const auto& [s, d] : scale_log) {
    const ExactRat twice = 2 * d;
    const long e2 = twice.get_num().get_si();
    const long whole = (e2 >= 0 ? e2 : e2 - 1) / 2;  // floor(e2 / 2)
    rational *= detail::rat_pow(s, whole);
    if (e2 - 2 * whole == 1) under_root *= s;
  }
  // sqrt(p/q) = sqrt(p q) / q.
  const ExactInt pq = under_root.get_num() * under_root.get_den();
  auto [sq, free] = detail::square_split(pq);
  rational *= ExactRat(sq) / ExactRat(under_root.get_den());
  out.prefactor.scalar = rational;
  out.prefactor.radicand = free;
  out.prefactor.geometric = geometric;
  out.prefactor.m_power = log_m.get_num().get_si();
  out.unit = order == 0 ? LaurentSeries::constant(1, 0)
                        : laurent_exp(LaurentSeries(1, std::vector<ExactRat>(c.begin() + 1, c.end()), order));
  return out;
}

// ---------------------------------------------------------------------------
// Composition families.

/// A part of a family member: large parts are m/q - value, small parts are value.
struct FamilyToken {
  bool large = false;
  int value = 0;
  friend bool operator==(const FamilyToken&, const FamilyToken&) = default;
  friend auto operator<=>(const FamilyToken&, const FamilyToken&) = default;
};

/// One multiset of tokens; its distinct orderings are family members.
struct FamilyMultiset {
  std::vector<int> offsets;  // q large-part offsets, non-increasing
  std::vector<int> small;    // small parts, non-increasing
  int mass() const { return std::accumulate(small.begin(), small.end(), 0); }
  std::vector<FamilyToken> tokens() const {
    std::vector<FamilyToken> t;
    for (int p : offsets) t.push_back({true, p});
    for (int s : small) t.push_back({false, s});
    std::sort(t.begin(), t.end());
    return t;
  }
};

/// Compositions of m with q large parts m/q - p (p >= 0) and small parts whose
/// total equals the total offset, up to mass `budget`. q = 1 is the principal
/// family; q >= 2 the q-nomial centered family, defined for q | m.
class CompositionFamily {
 public:
  CompositionFamily(int q, int budget) : q_(q), budget_(budget) {
    if (q < 1) throw InvalidArgument("family needs at least one large part");
    if (budget < 0) throw InvalidArgument("offset budget must be >= 0");
  }
  static CompositionFamily principal(int budget) { return {1, budget}; }
  static CompositionFamily centered(int n, int budget) { return {n, budget}; }

  int large_parts() const { return q_; }
  int budget() const { return budget_; }
  bool is_principal() const { return q_ == 1; }
  std::string str() const {
    return (q_ == 1 ? std::string("principal") : "centered(" + std::to_string(q_) + ")") +
           ", P=" + std::to_string(budget_);
  }

  std::vector<FamilyMultiset> multisets() const {
    std::vector<FamilyMultiset> out;
    for (int mass = 0; mass <= budget_; ++mass) {
      const auto offsets = integer_partitions(mass, q_);
      const auto smalls = integer_partitions(mass);
      for (auto o : offsets) {
        o.resize(static_cast<std::size_t>(q_), 0);
        for (const auto& s : smalls) out.push_back({o, s});
      }
    }
    return out;
  }

  /// Every distinct ordering of every multiset; grows quickly with q and P.
  std::vector<std::vector<FamilyToken>> members() const {
    std::vector<std::vector<FamilyToken>> out;
    for (const auto& ms : multisets()) {
      auto t = ms.tokens();
      do {
        out.push_back(t);
      } while (std::next_permutation(t.begin(), t.end()));
    }
    return out;
  }

  ExactInt member_count() const {
    ExactInt total = 0;
    for (const auto& ms : multisets()) total += arrangements(ms.tokens());
    return total;
  }

  /// Number of distinct orderings of a sorted token list.
  static ExactInt arrangements(const std::vector<FamilyToken>& sorted) {
    ExactInt r = factorial(static_cast<long>(sorted.size()));
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      r /= factorial(static_cast<long>(j - i));
      i = j;
    }
    return r;
  }

  /// The composition of a concrete m represented by a member.
  Composition instantiate(const std::vector<FamilyToken>& member, int m) const {
    if (m % q_ != 0) throw InvalidArgument("centered family needs q | m");
    std::vector<int> parts;
    for (const auto& t : member) parts.push_back(t.large ? m / q_ - t.value : t.value);
    return Composition(parts);
  }

 private:
  int q_;
  int budget_;
};

enum class FactorialRoute { rational, stirling };

struct FamilyOptions {
  FactorialRoute route = FactorialRoute::rational;
  bool check_stability = true;
  int stability_margin = 2;
  // Sum member by member instead of by multiset; slow, for cross-checks.
  bool per_member = false;
  unsigned jobs = 1;
};

/// Family sum relative to `base`: the family's count is base * series.
struct FamilyExpansion {
  AsymptoticPrefactor base;
  LaurentSeries series;
};

namespace detail {

inline Polynomial token_polynomial(const FamilyToken& t, int q) {
  return t.large ? Polynomial::linear(make_rat(1, q), -t.value) : Polynomial(t.value);
}

/// binom(2y + r, r) - 1 as a polynomial in m.
inline Polynomial leg_weight(int r, const Polynomial& y) {
  Polynomial p(1);
  for (int j = 1; j <= r; ++j) p *= y * Polynomial(2) + Polynomial(j);
  return p * Polynomial(ExactRat(1) / ExactRat(factorial(r))) - Polynomial(1);
}

/// (2x)!/x! relative to (2M)!/M! for x = M - p, M = m/q, as num/den in m.
inline std::pair<Polynomial, Polynomial> offset_ratio(int p, int q) {
  Polynomial num(1), den(1);
  for (int j = 0; j < p; ++j) num *= Polynomial::linear(make_rat(1, q), -j);
  for (int j = 0; j < 2 * p; ++j) den *= Polynomial::linear(make_rat(2, q), -j);
  return {num, den};
}

/// Leading-term polynomial of the count for N legs, P_N(m) = binom(2m, N).
inline Polynomial principal_polynomial(int N) {
  if (N == 0) return Polynomial(1);
  const auto& g = exact_formula(N).groups.front();
  const Polynomial m = Polynomial::variable();
  auto [q, rem] = (g.numerator.substitute(m) * leg_step_ratio(N)).divmod(g.denominator.substitute(m));
  if (!rem.is_zero()) throw AsymptoticError("principal term is not polynomial");
  return q;
}

/// Shifts for m!/(2m)! * prod over large parts of (2x)!/x!.
inline std::vector<StirlingShift> large_part_shifts(const std::vector<int>& offsets, int q) {
  std::vector<StirlingShift> sh{{ExactRat(1), 1, 1}, {ExactRat(2), 1, -1}};
  for (int p : offsets) {
    sh.push_back({make_rat(2, q), 1 - 2L * p, 1});
    sh.push_back({make_rat(1, q), 1L - p, -1});
  }
  return sh;
}

struct TokenCount {
  FamilyToken token;
  int count;
};

inline std::vector<TokenCount> count_tokens(const std::vector<FamilyToken>& sorted) {
  std::vector<TokenCount> out;
  for (const auto& t : sorted) {
    if (!out.empty() && out.back().token == t) ++out.back().count;
    else out.push_back({t, 1});
  }
  return out;
}

inline ExactInt multinomial_of(const std::vector<TokenCount>& types) {
  long total = 0;
  ExactInt den = 1;
  for (const auto& tc : types) {
    total += tc.count;
    den *= factorial(tc.count);
  }
  return factorial(total) / den;
}

// Sum over ordered choices of tokens for positions r..k-1 of the leg weights,
// times the number of orderings of what is left.
inline Polynomial prefix_weight_sum(std::vector<TokenCount>& types, const MultiIndex& idx, std::size_t r,
                                    int q) {
  if (r == idx.size()) return Polynomial(ExactRat(multinomial_of(types)));
  Polynomial acc;
  for (auto& tc : types) {
    if (tc.count == 0) continue;
    --tc.count;
    acc += leg_weight(idx[r], token_polynomial(tc.token, q)) * prefix_weight_sum(types, idx, r + 1, q);
    ++tc.count;
  }
  return acc;
}

struct MultisetContext {
  int N;
  int q;
  int order;
  FactorialRoute route;
  Polynomial principal;
  LogGammaExpansion base;  // for the Stirling route
};

// Contribution of one set of orderings. `types` holds all tokens; orderings are
// either all distinct ones (grouped) or a single explicit member.
inline LaurentSeries multiset_series(const MultisetContext& ctx, const std::vector<FamilyToken>& sorted,
                                     const std::vector<FamilyToken>* member) {
  const int K = ctx.order;
  const int q = ctx.q;
  const int L = static_cast<int>(sorted.size());
  std::vector<int> offsets;
  ExactRat small_const = 1;
  for (const auto& t : sorted) {
    if (t.large) offsets.push_back(t.value);
    else small_const *= ExactRat(factorial(2L * t.value) / factorial(t.value));
  }
  const int offset_mass = std::accumulate(offsets.begin(), offsets.end(), 0);

  Polynomial large_num(1), large_den(1);
  if (ctx.route == FactorialRoute::rational) {
    for (int p : offsets) {
      auto [a, b] = offset_ratio(p, q);
      large_num *= a;
      large_den *= b;
    }
  }
  // Order for the part without the large-part factor, whose valuation is offset_mass.
  const int inner_order = ctx.route == FactorialRoute::rational ? K : K - offset_mass;

  std::vector<std::pair<Polynomial, Polynomial>> pieces;  // num/den pieces
  if (ctx.N == 0) {
    ExactRat w = make_rat(L % 2 == 1 ? 1 : -1, L) * small_const;
    if (!member) w *= ExactRat(CompositionFamily::arrangements(sorted));
    pieces.push_back({large_num * Polynomial(w), large_den});
  } else {
    const auto& formula = exact_formula(ctx.N);
    const Polynomial Q = leg_step_ratio(ctx.N);
    for (const auto& g : formula.groups) {
      const int k = static_cast<int>(g.idx.size());
      if (L - 1 < k) continue;
      const ExactRat sign = ExactRat(sign_power(L - 1) * binomial(L - 1, k)) * small_const;
      auto add_first = [&](const FamilyToken& first, const Polynomial& rest) {
        const Polynomial y0 = token_polynomial(first, q);
        Polynomial num = g.numerator.substitute(y0) * Q.compose(y0) * rest * large_num * Polynomial(sign);
        Polynomial den = g.denominator.substitute(y0) * ctx.principal * large_den;
        pieces.push_back({std::move(num), std::move(den)});
      };
      if (member) {
        Polynomial w(1);
        for (int r = 0; r < k; ++r) w *= leg_weight(g.idx[static_cast<std::size_t>(r)], token_polynomial((*member)[static_cast<std::size_t>(r) + 1], q));
        add_first((*member)[0], w);
      } else {
        auto types = count_tokens(sorted);
        for (auto& tc : types) {
          --tc.count;
          add_first(tc.token, prefix_weight_sum(types, g.idx, 0, q));
          ++tc.count;
        }
      }
    }
  }
  LaurentSeries acc(inner_order);
  for (const auto& [num, den] : pieces) {
    if (num.is_zero()) continue;
    acc += laurent_from_rational(num, den, inner_order);
  }
  if (ctx.route == FactorialRoute::rational) return acc.truncated(K);
  // The large-part factor has valuation offset_mass, so a zero inner sum is zero through t^K.
  if (acc.is_zero()) return LaurentSeries(K);

  // Stirling route: the large-part factor relative to the family base.
  const auto big = loggamma_ratio_series(large_part_shifts(offsets, q), std::max(0, K - acc.valuation()));
  const auto& b = ctx.base.prefactor;
  if (big.prefactor.radicand != b.radicand || big.prefactor.geometric != b.geometric ||
      big.prefactor.m_power != -offset_mass) {
    throw AsymptoticError("large-part expansion does not share the family prefactor");
  }
  LaurentSeries rel = LaurentSeries::monomial(big.prefactor.scalar / b.scalar, offset_mass,
                                              big.unit.order() + offset_mass) *
                      big.unit;
  return (acc * rel).truncated(K);
}

inline LaurentSeries family_sum(const CompositionFamily& family, int N, int order, const FamilyOptions& opt,
                                const MultisetContext& ctx_in) {
  MultisetContext ctx = ctx_in;
  ctx.order = order;
  const auto sets = family.multisets();
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(sets.size())));
  std::vector<LaurentSeries> partial(jobs, LaurentSeries(order));
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < sets.size(); i += jobs) {
        auto t = sets[i].tokens();
        if (opt.per_member) {
          do {
            partial[w] += multiset_series(ctx, t, &t);
          } while (std::next_permutation(t.begin(), t.end()));
        } else {
          partial[w] += multiset_series(ctx, t, nullptr);
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  LaurentSeries total(order);
  for (const auto& p : partial) total += p;
  (void)N;
  return total;
}

}  // namespace detail

/// Base prefactor of a family: (2m)! * P_N(m) * ((2M)!/M!)^q * m!/(2m)! with M = m/q,
/// written as (2m)! * P_N(m) * 2^((q-1)/2) * q^-m times a unit series.
inline LogGammaExpansion family_base(int q, int order) {
  return loggamma_ratio_series(detail::large_part_shifts(std::vector<int>(static_cast<std::size_t>(q), 0), q),
                               order);
}

/// Sum of the Laurent expansions of every family member's term in the exact
/// formula for N legs (N = 0: vacuum), relative to the family base prefactor.
inline FamilyExpansion family_terms(const CompositionFamily& family, int N, int order,
                                    const FamilyOptions& opt = {}) {
  if (N < 0 || N > kMaxExplicitLegs) {
    throw InvalidArgument("family expansions need an exact formula: 0 <= N <= 5 (got " + std::to_string(N) + ")");
  }
  if (order < 0) throw InvalidArgument("order must be >= 0");
  if (family.budget() < order) {
    throw InvalidArgument("offset budget " + std::to_string(family.budget()) + " is below the order " +
                          std::to_string(order));
  }
  const int q = family.large_parts();
  detail::MultisetContext ctx{N, q, order, opt.route, detail::principal_polynomial(N), family_base(q, order)};

  auto run = [&](const CompositionFamily& fam) {
    LaurentSeries s = detail::family_sum(fam, N, order, opt, ctx);
    // The Stirling route already carries the base unit series per multiset.
    if (opt.route == FactorialRoute::rational) s = (s * ctx.base.unit).truncated(order);
    return s;
  };
  LaurentSeries series = run(family);
  if (opt.check_stability) {
    const CompositionFamily wider(q, family.budget() + opt.stability_margin);
    if (!(run(wider) == series)) {
      throw AsymptoticError("stability check failed: coefficients changed when the offset budget was raised from " +
                            std::to_string(family.budget()) + " to " + std::to_string(wider.budget()));
    }
  }
  FamilyExpansion out;
  out.base = ctx.base.prefactor;
  out.base.factorial_2m = true;
  const Polynomial P = ctx.principal;
  if (P.degree() >= 1) out.base.factors.push_back(P);
  else out.base.scalar *= P[0];
  out.series = std::move(series);
  return out;
}

// ---------------------------------------------------------------------------
// Normalized contributions.

struct AsymptoticContribution {
  int N = 0;
  int family = 1;  // number of large parts
  AsymptoticPrefactor prefactor;
  LaurentSeries correction;  // constant term 1

  /// Printed-table form: the bracket reads 1 - a_1/m - a_2/m^2 - ..., a_k returned.
  std::vector<ExactRat> bracket_coefficients() const {
    std::vector<ExactRat> out;
    for (int k = 1; k <= correction.order(); ++k) out.push_back(-correction[k]);
    return out;
  }
};

inline constexpr int kMaxTabulatedFamily = 4;

/// Normalizes a family expansion so the correction series starts at exactly 1.
inline AsymptoticContribution normalize_family(int N, int q, const FamilyExpansion& fe) {
  if (fe.series.is_zero()) throw AsymptoticError("family expansion vanishes to the requested order");
  const int v = fe.series.valuation();
  const ExactRat lead = fe.series.leading();
  AsymptoticContribution c;
  c.N = N;
  c.family = q;
  c.prefactor = fe.base;
  c.prefactor.sign = lead < 0 ? -1 : 1;
  c.prefactor.scalar *= lead < 0 ? -lead : lead;
  c.prefactor.m_power -= v;
  const Polynomial poly = c.prefactor.polynomial() * Polynomial(c.prefactor.scalar);
  auto [scalar, factors] = factor_linear(poly);
  c.prefactor.scalar = scalar;
  c.prefactor.factors = factors;
  c.correction = LaurentSeries::monomial(1 / lead, -v, fe.series.order() - 2 * v) * fe.series;
  return c;
}

/// Contribution of the n-nomial family (n = 1: principal) to the count with N
/// legs (N = 0: connected vacuum diagrams), expanded through t^order.
inline AsymptoticContribution contribution(int N, int n, int order, FamilyOptions opt = {}) {
  if (N < 0 || N > kMaxExplicitLegs || n < 1 || n > kMaxTabulatedFamily) {
    throw InvalidArgument("contribution is tabulated for 0 <= N <= 5 and 1 <= n <= 4 (got N=" + std::to_string(N) +
                          ", n=" + std::to_string(n) + "); use family_terms with a custom family");
  }
  auto fe = family_terms(CompositionFamily(n, order), N, order, opt);
  const int v = fe.series.is_zero() ? 0 : fe.series.valuation();
  if (v > 0) fe = family_terms(CompositionFamily(n, order + v), N, order + v, opt);
  return normalize_family(N, n, fe);
}

/// Truncated asymptotic value sum_c prefactor_c(m) * sum_{k<=order} a_k m^-k.
inline SurdValue evaluate_truncated(const std::vector<AsymptoticContribution>& contributions, long m, int order) {
  if (m <= order) {
    throw InvalidArgument("asymptotic evaluation needs m > order (m=" + std::to_string(m) +
                          ", order=" + std::to_string(order) + ")");
  }
  SurdValue total;
  for (const auto& c : contributions) {
    if (m % c.family != 0) {
      throw InvalidArgument("the " + std::to_string(c.family) + "-nomial contribution needs m divisible by " +
                            std::to_string(c.family));
    }
    if (c.correction.order() < order) throw InvalidArgument("contribution expanded to fewer terms than requested");
    const ExactRat series = c.correction.truncated(order).evaluate_at(ExactRat(m));
    total += c.prefactor.evaluate(m) * SurdValue::of(series);
  }
  return total;
}

}  // namespace feyncount

#endif  // FEYNCOUNT_ASYMPTOTICS_HPP
