// Copyright 2026 The dworkbench Authors
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

#pragma once

// Exact arithmetic in Z[zeta_p], basis 1, zeta, ..., zeta^{p-2}.

#include <cstdint>
#include <string>
#include <vector>

#include "dworkbench/core.hpp"

namespace dworkbench {

class CyclotomicInteger {
 public:
  explicit CyclotomicInteger(int p) : p_(p), c_(static_cast<std::size_t>(p - 1)) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("CyclotomicInteger: p must be an odd prime");
  }

  static CyclotomicInteger integer(int p, const BigInt& n) {
    CyclotomicInteger x(p);
    x.c_[0] = n;
    return x;
  }

  /// zeta^e for any integer e.
  static CyclotomicInteger zeta_power(int p, std::int64_t e) {
    std::vector<BigInt> w(static_cast<std::size_t>(p), 0);
    w[static_cast<std::size_t>(mod_floor(e, p))] = 1;
    return from_powers(p, w);
  }

  /// sum_t w[t] zeta^t over t = 0..p-1, reduced with 1 + zeta + ... + zeta^{p-1} = 0.
  static CyclotomicInteger from_powers(int p, const std::vector<BigInt>& w) {
    if (static_cast<int>(w.size()) != p) throw std::invalid_argument("from_powers: need p weights");
    CyclotomicInteger x(p);
    for (int i = 0; i < p - 1; ++i) x.c_[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(p - 1)];
    return x;
  }

  int prime() const { return p_; }
  const std::vector<BigInt>& coefficients() const { return c_; }
  bool is_zero() const {
    for (const auto& v : c_) {
      if (v != 0) return false;
    }
    return true;
  }

  friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  CyclotomicInteger& operator+=(const CyclotomicInteger& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CyclotomicInteger& operator-=(const CyclotomicInteger& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
  friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }

  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    a.check(b);
    const int p = a.p_;
    std::vector<BigInt> w(static_cast<std::size_t>(p), 0);
    for (int i = 0; i < p - 1; ++i) {
      if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < p - 1; ++j) {
        w[static_cast<std::size_t>((i + j) % p)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
      }
    }
    return from_powers(p, w);
  }

  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const BigInt& n) {
    CyclotomicInteger r = a;
    for (auto& v : r.c_) v *= n;
    return r;
  }

  /// Exact division by a rational integer; throws InexactDivision otherwise.
  CyclotomicInteger divided_exactly(const BigInt& n) const {
    if (n == 0) throw std::domain_error("CyclotomicInteger: division by zero");
    CyclotomicInteger r = *this;
    for (auto& v : r.c_) {
      if (v % n != 0) throw InexactDivision("CyclotomicInteger: " + str() + " is not divisible by " + n.str());
      v /= n;
    }
    return r;
  }

  /// Automorphism zeta -> zeta^j, gcd(j, p) = 1.
  CyclotomicInteger galois(std::int64_t j) const {
    if (mod_floor(j, p_) == 0) throw std::invalid_argument("galois: j must be prime to p");
    std::vector<BigInt> w(static_cast<std::size_t>(p_), 0);
    for (int i = 0; i < p_ - 1; ++i) w[static_cast<std::size_t>(mod_floor(i * j, p_))] += c_[static_cast<std::size_t>(i)];
    return from_powers(p_, w);
  }

  /// Sum over all p-1 conjugates, a rational integer.
  BigInt trace() const {
    // Tr(zeta^i) = p-1 for i = 0, else -1.
    BigInt t = c_[0] * (p_ - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) t -= c_[i];
    return t;
  }

  /// Determinant of multiplication by x on the power basis (fraction-free Bareiss).
  BigInt norm() const {
    const int n = p_ - 1;
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j) {
      const CyclotomicInteger col = *this * zeta_power(p_, j);
      for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.c_[static_cast<std::size_t>(i)];
    }
    return bareiss_determinant(std::move(m));
  }

  /// Valuation at the prime (1 - zeta), read from v_p of the norm.
  ExtendedRational pi_valuation_by_norm() const {
    if (is_zero()) return ExtendedRational::infinity();
    return ExtendedRational(Rational(p_adic_valuation(norm(), p_)));
  }

  /// Same valuation by repeated exact division by (1 - zeta).
  ExtendedRational pi_valuation_by_division() const {
    if (is_zero()) return ExtendedRational::infinity();
    std::vector<BigInt> x = c_;
    std::int64_t v = 0;
    while (true) {
      // x mod (1 - zeta) is x(1) mod p.
      BigInt at_one = 0;
      for (const auto& c : x) at_one += c;
      if (at_one % p_ != 0) return ExtendedRational(Rational(v));
      // x - (x(1)/p) Phi_p vanishes at t = 1; divide that by (1 - t).
      const BigInt shift = at_one / p_;
      std::vector<BigInt> y(static_cast<std::size_t>(p_));
      for (int i = 0; i < p_ - 1; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - shift;
      y[static_cast<std::size_t>(p_ - 1)] = -shift;
      // y(t) = (t - 1) g(t); synthetic division from the top.
      std::vector<BigInt> g(static_cast<std::size_t>(p_ - 1));
      BigInt carry = 0;
      for (int i = p_ - 1; i >= 1; --i) {
        carry += y[static_cast<std::size_t>(i)];
        g[static_cast<std::size_t>(i - 1)] = carry;
      }
      if (carry + y[0] != 0) throw std::logic_error("pi_valuation_by_division: nonzero remainder");
      for (auto& c : g) c = -c;  // (1 - t) = -(t - 1)
      x = std::move(g);
      ++v;
    }
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? " " : "") + c_[i].str();
    return s + "]";
  }

 private:
  void check(const CyclotomicInteger& o) const {
    if (o.p_ != p_) throw std::invalid_argument("CyclotomicInteger: mixed primes");
  }

  static BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m[k][k] == 0) {
        std::size_t r = k + 1;
        while (r < n && m[r][k] == 0) ++r;
        if (r == n) return 0;
        std::swap(m[k], m[r]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
  }

  int p_;
  std::vector<BigInt> c_;
};

/// ord_q with q = p^a, normalized so that ord_q(q) = 1.
inline ExtendedRational ord_q(const CyclotomicInteger& x, int a) {
  if (a < 1) throw std::invalid_argument("ord_q: a must be >= 1");
  const ExtendedRational v = x.pi_valuation_by_norm();
  if (v.is_infinite()) return v;
  return ExtendedRational(v.value() / ((x.prime() - 1) * a));
}

}  // namespace dworkbench
