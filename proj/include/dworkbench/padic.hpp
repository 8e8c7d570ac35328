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

// Truncated p-adic rings.
//
// MixedRing is (Z/p^N)[zeta, t] / (Phi_p(zeta), h(t)): the integers of
// Q_p(zeta_p) tensored with the unramified extension of degree m, modulo p^N.
// h is the minimal polynomial of the Teichmuller lift of a root of the least
// irreducible h0 over F_p, so the Frobenius lift acts as t -> t^p.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dworkbench/core.hpp"
#include "dworkbench/finite_field.hpp"

namespace dworkbench {

class MixedRing;
using RingPtr = std::shared_ptr<const MixedRing>;

/// pi-adic valuation (pi = zeta - 1) of a truncated element. When `exact` is
/// false the element vanished mod p^N and `value` is only a lower bound.
struct PiValuation {
  std::int64_t value = 0;
  bool exact = true;
};

class MixedElement {
 public:
  MixedElement() = default;
  MixedElement(RingPtr ring, std::vector<BigInt> coefficients) : ring_(std::move(ring)), c_(std::move(coefficients)) {}

  const RingPtr& ring() const { return ring_; }
  const std::vector<BigInt>& coefficients() const { return c_; }
  /// Coefficient of zeta^i t^j.
  const BigInt& at(int i, int j) const;
  bool is_zero() const {
    for (const auto& v : c_) {
      if (v != 0) return false;
    }
    return true;
  }

  friend bool operator==(const MixedElement& a, const MixedElement& b) { return a.c_ == b.c_; }

  friend MixedElement operator+(const MixedElement& a, const MixedElement& b);
  friend MixedElement operator-(const MixedElement& a, const MixedElement& b);
  friend MixedElement operator*(const MixedElement& a, const MixedElement& b);
  MixedElement operator-() const;

  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<BigInt> c_;
};

class MixedRing : public std::enable_shared_from_this<MixedRing> {
 public:
  /// Unreduced sum of products, reduced once at the end.
  struct Accumulator {
    std::vector<BigInt> raw;
    bool empty = true;
  };

  static RingPtr create(int p, int precision, int unramified_degree) {
    std::shared_ptr<MixedRing> ring(new MixedRing(p, precision, unramified_degree));
    ring->initialize();
    return ring;
  }

  int prime() const { return p_; }
  int precision() const { return n_; }
  int unramified_degree() const { return m_; }
  const BigInt& modulus() const { return modulus_; }
  std::size_t slots() const { return static_cast<std::size_t>((p_ - 1) * m_); }
  /// h0 over F_p, monic, low degree first.
  const std::vector<GaloisField::Element>& residue_modulus() const { return h0_; }
  /// h over Z/p^N, monic, low degree first.
  const std::vector<BigInt>& modulus_polynomial() const { return h_; }

  MixedElement zero() const { return MixedElement(self(), std::vector<BigInt>(slots(), 0)); }
  MixedElement one() const { return from_integer(1); }
  MixedElement from_integer(const BigInt& n) const {
    std::vector<BigInt> c(slots(), 0);
    c[0] = reduce(n);
    return MixedElement(self(), std::move(c));
  }
  MixedElement zeta_power(std::int64_t e) const {
    std::vector<BigInt> c(slots(), 0);
    const auto k = mod_floor(e, p_);
    if (k == p_ - 1) {
      for (int i = 0; i < p_ - 1; ++i) c[static_cast<std::size_t>(i)] = reduce(BigInt(-1));
    } else {
      c[static_cast<std::size_t>(k)] = 1;
    }
    return MixedElement(self(), std::move(c));
  }
  MixedElement t_power(int j) const {
    if (j < 0 || j >= m_) throw std::out_of_range("MixedRing::t_power");
    std::vector<BigInt> c(slots(), 0);
    c[index(0, j)] = 1;
    return MixedElement(self(), std::move(c));
  }
  MixedElement make(std::vector<BigInt> c) const {
    if (c.size() != slots()) throw std::invalid_argument("MixedRing::make: wrong coefficient count");
    for (auto& v : c) v = reduce(v);
    return MixedElement(self(), std::move(c));
  }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j * (p_ - 1) + i); }

  BigInt reduce(const BigInt& v) const {
    BigInt r = v % modulus_;
    if (r < 0) r += modulus_;
    return r;
  }

  MixedElement add(const MixedElement& a, const MixedElement& b) const {
    check(a);
    check(b);
    std::vector<BigInt> c(slots());
    for (std::size_t k = 0; k < c.size(); ++k) {
      c[k] = a.coefficients()[k] + b.coefficients()[k];
      if (c[k] >= modulus_) c[k] -= modulus_;
    }
    return MixedElement(self(), std::move(c));
  }
  MixedElement sub(const MixedElement& a, const MixedElement& b) const {
    check(a);
    check(b);
    std::vector<BigInt> c(slots());
    for (std::size_t k = 0; k < c.size(); ++k) {
      c[k] = a.coefficients()[k] - b.coefficients()[k];
      if (c[k] < 0) c[k] += modulus_;
    }
    return MixedElement(self(), std::move(c));
  }
  MixedElement neg(const MixedElement& a) const { return sub(zero(), a); }
  MixedElement scale(const MixedElement& a, const BigInt& s) const {
    check(a);
    const BigInt r = reduce(s);
    std::vector<BigInt> c(slots());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a.coefficients()[k] * r) % modulus_;
    return MixedElement(self(), std::move(c));
  }

  Accumulator accumulator() const {
    Accumulator acc;
    acc.raw.assign(raw_size(), 0);
    return acc;
  }

  void mul_add(Accumulator& acc, const MixedElement& a, const MixedElement& b) const {
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    const int zw = 2 * p_ - 3;
    BigInt prod;
    for (int j1 = 0; j1 < m_; ++j1) {
      for (int i1 = 0; i1 < p_ - 1; ++i1) {
        const BigInt& u = x[index(i1, j1)];
        if (u == 0) continue;
        for (int j2 = 0; j2 < m_; ++j2) {
          for (int i2 = 0; i2 < p_ - 1; ++i2) {
            const BigInt& v = y[index(i2, j2)];
            if (v == 0) continue;
            boost::multiprecision::multiply(prod, u, v);
            acc.raw[static_cast<std::size_t>((j1 + j2) * zw + i1 + i2)] += prod;
          }
        }
      }
    }
    acc.empty = false;
  }

  MixedElement reduce(Accumulator& acc) const {
    if (acc.empty) return zero();
    const int zw = 2 * p_ - 3;
    const int tw = 2 * m_ - 1;
    // zeta^p = 1, then zeta^{p-1} = -(1 + ... + zeta^{p-2}).
    std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(tw), std::vector<BigInt>(static_cast<std::size_t>(p_ - 1)));
    for (int j = 0; j < tw; ++j) {
      BigInt* r = &acc.raw[static_cast<std::size_t>(j * zw)];
      for (int i = p_; i < zw; ++i) r[i - p_] += r[i];
      const BigInt top = p_ - 1 < zw ? r[p_ - 1] : BigInt(0);
      for (int i = 0; i < p_ - 1; ++i) rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = reduce(r[i] - top);
    }
    // t^m = -(h_0 + ... + h_{m-1} t^{m-1}).
    for (int j = tw - 1; j >= m_; --j) {
      auto& top = rows[static_cast<std::size_t>(j)];
      for (int k = 0; k < m_; ++k) {
        auto& dst = rows[static_cast<std::size_t>(j - m_ + k)];
        if (h_[static_cast<std::size_t>(k)] == 0) continue;
        for (int i = 0; i < p_ - 1; ++i) dst[static_cast<std::size_t>(i)] = reduce(dst[static_cast<std::size_t>(i)] - top[static_cast<std::size_t>(i)] * h_[static_cast<std::size_t>(k)]);
      }
    }
    std::vector<BigInt> c(slots());
    for (int j = 0; j < m_; ++j) {
      for (int i = 0; i < p_ - 1; ++i) c[index(i, j)] = std::move(rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    }
    return MixedElement(self(), std::move(c));
  }

  MixedElement mul(const MixedElement& a, const MixedElement& b) const {
    check(a);
    check(b);
    Accumulator acc = accumulator();
    mul_add(acc, a, b);
    return reduce(acc);
  }

  MixedElement pow(MixedElement a, std::uint64_t e) const {
    MixedElement r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  /// tau^e: fixes zeta, t -> t^{p^e}. Any integer e; tau^m = identity.
  MixedElement frobenius(const MixedElement& a, std::int64_t e) const {
    check(a);
    const auto k = static_cast<std::size_t>(mod_floor(e, m_));
    if (k == 0) return a;
    const auto& images = frobenius_images_[k];  // images[j] = tau^k(t^j)
    std::vector<BigInt> c(slots(), 0);
    for (int j = 0; j < m_; ++j) {
      const auto& img = images[static_cast<std::size_t>(j)];
      for (int i = 0; i < p_ - 1; ++i) {
        const BigInt& u = a.coefficients()[index(i, j)];
        if (u == 0) continue;
        for (int jj = 0; jj < m_; ++jj) c[index(i, jj)] += u * img[static_cast<std::size_t>(jj)];
      }
    }
    for (auto& v : c) v = reduce(v);
    return MixedElement(self(), std::move(c));
  }

  /// Inverse of a unit: Newton from the inverse modulo the maximal ideal.
  MixedElement inverse(const MixedElement& u) const {
    check(u);
    // Residue field image: zeta -> 1, coefficients mod p, then invert in F_{p^m}.
    const GaloisField field(p_, m_, h0_);
    std::vector<int> coords(static_cast<std::size_t>(m_));
    for (int j = 0; j < m_; ++j) {
      BigInt s = 0;
      for (int i = 0; i < p_ - 1; ++i) s += u.coefficients()[index(i, j)];
      coords[static_cast<std::size_t>(j)] = static_cast<int>(mod_floor(static_cast<std::int64_t>(s % p_), p_));
    }
    const auto residue = field.from_coordinates(coords);
    if (residue == 0) throw std::domain_error("MixedRing::inverse: not a unit");
    const auto inv_coords = field.coordinates(field.inv(residue));
    std::vector<BigInt> c(slots(), 0);
    for (int j = 0; j < m_; ++j) c[index(0, j)] = inv_coords[static_cast<std::size_t>(j)];
    MixedElement x(self(), std::move(c));
    const MixedElement two = from_integer(2);
    // Each step doubles the pi-adic precision; (p-1)N pi-digits are needed.
    for (std::int64_t prec = 1; prec < 2 * static_cast<std::int64_t>(p_ - 1) * n_ + 2; prec *= 2) {
      x = mul(x, sub(two, mul(u, x)));
    }
    if (!(mul(u, x) == one())) throw NonConvergence("MixedRing::inverse: Newton iteration did not converge");
    return x;
  }

  /// min over t-slots and pi-basis digits of (p-1) v_p(e_k) + k.
  PiValuation valuation(const MixedElement& a) const {
    check(a);
    std::int64_t best = -1;
    std::vector<BigInt> e(static_cast<std::size_t>(p_ - 1));
    for (int j = 0; j < m_; ++j) {
      // zeta = 1 + pi: e_k = sum_{i >= k} C(i, k) c_i.
      for (auto& v : e) v = 0;
      for (int i = 0; i < p_ - 1; ++i) {
        const BigInt& ci = a.coefficients()[index(i, j)];
        if (ci == 0) continue;
        BigInt binom = 1;
        for (int k = 0; k <= i; ++k) {
          e[static_cast<std::size_t>(k)] += binom * ci;
          binom = binom * (i - k) / (k + 1);
        }
      }
      for (int k = 0; k < p_ - 1; ++k) {
        const BigInt r = reduce(e[static_cast<std::size_t>(k)]);
        if (r == 0) continue;
        const std::int64_t v = static_cast<std::int64_t>(p_ - 1) * p_adic_valuation(r, p_) + k;
        if (best < 0 || v < best) best = v;
      }
    }
    if (best < 0) return {static_cast<std::int64_t>(p_ - 1) * n_, false};
    return {best, true};
  }

  /// Reduction modulo the maximal ideal, as an element of F_{p^m} (t -> root of h0).
  std::vector<int> residue(const MixedElement& a) const {
    std::vector<int> coords(static_cast<std::size_t>(m_));
    for (int j = 0; j < m_; ++j) {
      BigInt s = 0;
      for (int i = 0; i < p_ - 1; ++i) s += a.coefficients()[index(i, j)];
      coords[static_cast<std::size_t>(j)] = static_cast<int>(static_cast<std::int64_t>(((s % p_) + p_) % p_));
    }
    return coords;
  }

  /// Element with the same coefficients in a ring of lower precision or
  /// larger unramified degree is not supported; this only lowers N.
  MixedElement truncate_to(const RingPtr& target, const MixedElement& a) const {
    if (target->p_ != p_ || target->m_ != m_ || target->n_ > n_) throw std::invalid_argument("truncate_to: incompatible rings");
    std::vector<BigInt> c = a.coefficients();
    for (auto& v : c) v %= target->modulus_;
    return MixedElement(target, std::move(c));
  }

  void check(const MixedElement& a) const {
    if (a.ring().get() != this) throw std::invalid_argument("MixedRing: element from another ring");
  }

 private:
  MixedRing(int p, int precision, int m) : p_(p), n_(precision), m_(m) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("MixedRing: p must be an odd prime");
    if (precision < 1) throw std::invalid_argument("MixedRing: precision must be >= 1");
    if (m < 1) throw std::invalid_argument("MixedRing: unramified degree must be >= 1");
    modulus_ = ipow(BigInt(p), static_cast<unsigned>(precision));
  }

  RingPtr self() const { return shared_from_this(); }
  std::size_t raw_size() const { return static_cast<std::size_t>((2 * p_ - 3) * (2 * m_ - 1)); }

  // Polynomials in one variable over Z/p^N modulo a monic g, low degree first.
  std::vector<BigInt> poly_mulmod(const std::vector<BigInt>& a, const std::vector<BigInt>& b, const std::vector<BigInt>& g) const {
    const std::size_t m = g.size() - 1;
    std::vector<BigInt> r(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i + j] += a[i] * b[j];
    }
    for (std::size_t i = 2 * m; i-- > m;) {
      const BigInt c = reduce(r[i]);
      if (c == 0) continue;
      for (std::size_t k = 0; k < m; ++k) r[i - m + k] -= c * g[k];
    }
    r.resize(m);
    for (auto& v : r) v = reduce(v);
    return r;
  }

  std::vector<BigInt> poly_powmod(std::vector<BigInt> a, BigInt e, const std::vector<BigInt>& g) const {
    std::vector<BigInt> r(g.size() - 1, 0);
    r[0] = 1;
    while (e > 0) {
      if ((e & 1) != 0) r = poly_mulmod(r, a, g);
      e >>= 1;
      if (e > 0) a = poly_mulmod(a, a, g);
    }
    return r;
  }

  void initialize() {
    const GaloisField prime(p_, 1);
    h0_ = detail::least_irreducible(prime, m_);
    std::vector<BigInt> h0_lift(h0_.begin(), h0_.end());
    const BigInt q = ipow(BigInt(p_), static_cast<unsigned>(m_));
    // omega = Teichmuller lift of X in (Z/p^N)[X]/(h0): iterate x -> x^q.
    std::vector<BigInt> omega(static_cast<std::size_t>(m_), 0);
    if (m_ > 1) {
      omega[1] = 1;
    } else {
      omega[0] = reduce(-h0_lift[0]);  // X = -h0_0 in degree one
    }
    for (int it = 0; it <= n_ + 1; ++it) {
      auto next = poly_powmod(omega, q, h0_lift);
      if (next == omega) break;
      omega = std::move(next);
      if (it == n_ + 1) throw NonConvergence("MixedRing: Teichmuller iteration did not stabilize");
    }
    // Minimal polynomial of omega: omega^m = -sum_k h_k omega^k. The matrix of
    // powers omega^0..omega^{m-1} is the identity mod p, so the system is unimodular.
    std::vector<std::vector<BigInt>> powers;
    std::vector<BigInt> acc(static_cast<std::size_t>(m_), 0);
    acc[0] = 1;
    for (int k = 0; k <= m_; ++k) {
      powers.push_back(acc);
      acc = poly_mulmod(acc, omega, h0_lift);
    }
    // Solve sum_k x_k powers[k] = -powers[m] for x (m x m), columns = powers[k].
    const std::size_t m = static_cast<std::size_t>(m_);
    std::vector<std::vector<BigInt>> mat(m, std::vector<BigInt>(m + 1));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t k = 0; k < m; ++k) mat[r][k] = powers[k][r];
      mat[r][m] = reduce(-powers[m][r]);
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      while (piv < m && mat[piv][col] % p_ == 0) ++piv;
      if (piv == m) throw std::logic_error("MixedRing: singular power basis");
      std::swap(mat[piv], mat[col]);
      const BigInt inv = mod_inverse(mat[col][col], modulus_);
      for (auto& v : mat[col]) v = reduce(v * inv);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || mat[r][col] == 0) continue;
        const BigInt f = mat[r][col];
        for (std::size_t k = col; k <= m; ++k) mat[r][k] = reduce(mat[r][k] - f * mat[col][k]);
      }
    }
    h_.assign(m + 1, 0);
    for (std::size_t k = 0; k < m; ++k) h_[k] = mat[k][m];
    h_[m] = 1;
    // tau^e(t^j) = t^{j p^e} mod h.
    frobenius_images_.assign(m, {});
    for (std::size_t e = 0; e < m; ++e) {
      const BigInt pe = ipow(BigInt(p_), static_cast<unsigned>(e));
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<BigInt> t(m, 0);
        if (m > 1) {
          t[1] = 1;
        } else {
          t[0] = reduce(-h_[0]);
        }
        frobenius_images_[e].push_back(poly_powmod(t, pe * j, h_));
      }
    }
  }

  int p_, n_, m_;
  BigInt modulus_;
  std::vector<GaloisField::Element> h0_;
  std::vector<BigInt> h_;
  std::vector<std::vector<std::vector<BigInt>>> frobenius_images_;
};

inline const BigInt& MixedElement::at(int i, int j) const { return c_.at(ring_->index(i, j)); }
inline MixedElement operator+(const MixedElement& a, const MixedElement& b) { return a.ring_->add(a, b); }
inline MixedElement operator-(const MixedElement& a, const MixedElement& b) { return a.ring_->sub(a, b); }
inline MixedElement operator*(const MixedElement& a, const MixedElement& b) { return a.ring_->mul(a, b); }
inline MixedElement MixedElement::operator-() const { return ring_->neg(*this); }
inline std::string MixedElement::str() const {
  std::string s = "[";
  for (std::size_t k = 0; k < c_.size(); ++k) s += (k ? " " : "") + c_[k].str();
  return s + "]";
}

/// Lazy dot product: one reduction for the whole sum.
inline MixedElement dot(const MixedElement* x, const MixedElement* y, std::size_t n, std::size_t y_stride = 1) {
  if (n == 0) throw std::invalid_argument("dot: empty");
  const MixedRing& ring = *x[0].ring();
  auto acc = ring.accumulator();
  for (std::size_t k = 0; k < n; ++k) ring.mul_add(acc, x[k], y[k * y_stride]);
  return ring.reduce(acc);
}

}  // namespace dworkbench
