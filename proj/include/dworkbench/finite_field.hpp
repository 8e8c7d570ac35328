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

// Small finite fields for exhaustive enumeration.
//
// GaloisField is F_{p^m} with elements encoded as integers sum c_i p^i over
// the coordinates relative to the least monic irreducible modulus, using
// log/exp tables. ExtensionField is F_q[z]/(H) on top of a GaloisField, for
// the larger fields F_{q^k} that are only walked once, element by element.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dworkbench/core.hpp"

namespace dworkbench {

namespace detail {

/// Dense polynomials over a field type exposing add/sub/mul/inv/zero/one,
/// coefficients low degree first, no trailing zeros (zero polynomial = {}).
template <class Field>
struct PolyOps {
  using E = typename Field::Element;
  using Poly = std::vector<E>;
  const Field& f;

  void trim(Poly& a) const {
    while (!a.empty() && a.back() == f.zero()) a.pop_back();
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), f.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == f.zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  Poly mod(Poly a, const Poly& m) const {
    if (m.empty()) throw std::domain_error("polynomial mod by zero");
    const E lead_inv = f.inv(m.back());
    while (a.size() >= m.size()) {
      const E c = f.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
      trim(a);
    }
    return a;
  }

  Poly gcd(Poly a, Poly b) const {
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly result{f.one()};
    result = mod(result, m);
    base = mod(base, m);
    while (e) {
      if (e & 1) result = mod(mul(result, base), m);
      e >>= 1;
      if (e) base = mod(mul(base, base), m);
    }
    return result;
  }

  /// Ben-Or: a monic h of degree k is irreducible over F_Q iff
  /// gcd(h, z^{Q^i} - z) = 1 for i = 1..k/2.
  bool is_irreducible(const Poly& h, std::uint64_t field_size) const {
    const std::size_t k = h.size() - 1;
    if (k == 1) return true;
    const Poly z{f.zero(), f.one()};
    Poly zq = z;
    for (std::size_t i = 1; i <= k / 2; ++i) {
      zq = powmod(zq, field_size, h);
      const Poly g = gcd(h, sub(zq, z));
      if (g.size() != 1) return false;
    }
    return true;
  }
};

/// Least monic irreducible of degree k, ordering candidates by the integer
/// sum c_i Q^i of their lower coefficients (c_0 least significant).
template <class Field>
std::vector<typename Field::Element> least_irreducible(const Field& f, int k) {
  if (k < 1) throw std::invalid_argument("least_irreducible: degree must be >= 1");
  const PolyOps<Field> ops{f};
  const std::uint64_t size = f.size();
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<typename Field::Element> h(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) h[static_cast<std::size_t>(i)] = f.element(digits[static_cast<std::size_t>(i)]);
    h[static_cast<std::size_t>(k)] = f.one();
    if (ops.is_irreducible(h, size)) return h;
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == size) digits[pos++] = 0;
    if (pos == digits.size()) throw std::logic_error("least_irreducible: exhausted candidates");
  }
}

}  // namespace detail

/// F_{p^m}, m >= 1.
class GaloisField {
 public:
  using Element = std::uint32_t;
  static constexpr std::uint64_t kMaxTableSize = 1u << 20;

  /// Uses the least monic irreducible modulus of degree m.
  GaloisField(int p, int m) : p_(p), m_(m) {
    check_shape();
    if (m == 1) {
      modulus_ = {0, 1};
    } else {
      const GaloisField prime(p, 1);
      const auto h = detail::least_irreducible(prime, m);
      modulus_.assign(h.begin(), h.end());
    }
    build_tables();
  }

  /// Explicit monic modulus over F_p (low degree first), checked irreducible.
  GaloisField(int p, int m, std::vector<Element> modulus) : p_(p), m_(m), modulus_(std::move(modulus)) {
    check_shape();
    if (static_cast<int>(modulus_.size()) != m + 1 || modulus_.back() != 1) {
      throw std::invalid_argument("GaloisField: modulus must be monic of degree m");
    }
    for (auto c : modulus_) {
      if (c >= static_cast<Element>(p)) throw std::invalid_argument("GaloisField: modulus coefficient out of range");
    }
    if (m > 1) {
      const GaloisField prime(p, 1);
      if (!detail::PolyOps<GaloisField>{prime}.is_irreducible(modulus_, static_cast<std::uint64_t>(p))) {
        throw std::invalid_argument("GaloisField: modulus is reducible");
      }
    }
    build_tables();
  }

  int characteristic() const { return p_; }
  int degree() const { return m_; }
  std::uint64_t size() const { return q_; }
  /// Monic modulus over F_p, low degree first.
  const std::vector<Element>& modulus() const { return modulus_; }

  static Element zero() { return 0; }
  static Element one() { return 1; }
  Element element(std::uint64_t code) const {
    if (code >= q_) throw std::out_of_range("GaloisField::element");
    return static_cast<Element>(code);
  }
  /// Embedding of an integer through F_p.
  Element from_integer(std::int64_t n) const { return static_cast<Element>(mod_floor(n, p_)); }

  std::vector<int> coordinates(Element a) const {
    std::vector<int> c(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i, a /= p_) c[static_cast<std::size_t>(i)] = static_cast<int>(a % p_);
    return c;
  }
  Element from_coordinates(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) > m_) throw std::invalid_argument("GaloisField: too many coordinates");
    std::uint64_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p_ + static_cast<std::uint64_t>(mod_floor(c[i], p_));
    return static_cast<Element>(code);
  }

  Element add(Element a, Element b) const {
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b, 1);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element neg(Element a) const { return neg_table_[a]; }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("GaloisField: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
  }
  Element frobenius(Element a) const { return pow(a, static_cast<std::uint64_t>(p_)); }
  /// Absolute trace to F_p.
  int trace(Element a) const { return trace_[a]; }
  Element generator() const { return exp_[1 % (q_ - 1)]; }

  std::string str(Element a) const {
    if (m_ == 1) return std::to_string(a);
    std::string s = "[";
    const auto c = coordinates(a);
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
    return s + "]";
  }

 private:
  void check_shape() {
    if (p_ < 2 || !is_prime(p_)) throw std::invalid_argument("GaloisField: p must be prime");
    if (m_ < 1) throw std::invalid_argument("GaloisField: m must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < m_; ++i) {
      q *= static_cast<std::uint64_t>(p_);
      if (q > kMaxTableSize) throw FieldTooLarge("GaloisField: p^m exceeds the table limit");
    }
    q_ = static_cast<std::uint32_t>(q);
  }

  Element add_digits(Element a, Element b, int sign) const {
    std::uint32_t out = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      const int da = static_cast<int>(a % p_), db = static_cast<int>(b % p_);
      a /= p_;
      b /= p_;
      out += static_cast<std::uint32_t>(mod_floor(da + sign * db, p_)) * scale;
      scale *= p_;
    }
    return out;
  }

  // Schoolbook product of coordinate vectors reduced by the modulus.
  Element mul_slow(Element a, Element b) const {
    const auto x = coordinates(a), y = coordinates(b);
    std::vector<std::int64_t> r(static_cast<std::size_t>(2 * m_), 0);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) r[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    }
    for (int i = 2 * m_ - 1; i >= m_; --i) {
      const std::int64_t c = mod_floor(r[static_cast<std::size_t>(i)], p_);
      if (c == 0) continue;
      for (int t = 0; t <= m_; ++t) r[static_cast<std::size_t>(i - m_ + t)] -= c * modulus_[static_cast<std::size_t>(t)];
    }
    std::vector<int> c(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) c[static_cast<std::size_t>(i)] = static_cast<int>(mod_floor(r[static_cast<std::size_t>(i)], p_));
    return from_coordinates(c);
  }

  void build_tables() {
    neg_table_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) neg_table_[a] = add_digits(0, a, -1);
    if (q_ <= 1024) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (std::uint32_t a = 0; a < q_; ++a) {
        for (std::uint32_t b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b, 1);
      }
    }
    // Find a primitive element: its powers must reach every nonzero element.
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::uint32_t x = 1, order = 0;
      do {
        x = mul_slow(x, g);
        ++order;
      } while (x != 1);
      if (order != q_ - 1) continue;
      x = 1;
      for (std::uint32_t e = 0; e < q_ - 1; ++e) {
        exp_[e] = x;
        log_[x] = e;
        x = mul_slow(x, g);
      }
      exp_[q_ - 1] = 1;
      break;
    }
    trace_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      Element sum = 0, conj = a;
      for (int i = 0; i < m_; ++i) {
        sum = add(sum, conj);
        conj = frobenius(conj);
      }
      if (sum >= static_cast<std::uint32_t>(p_)) throw std::logic_error("GaloisField: trace left F_p");
      trace_[a] = static_cast<int>(sum);
    }
  }

  int p_, m_;
  std::uint32_t q_ = 0;
  std::vector<Element> modulus_;
  std::vector<Element> add_table_, neg_table_, exp_, log_;
  std::vector<int> trace_;
};

/// F_{q^k} = F_q[z]/(H) with H the least monic irreducible of degree k over
/// F_q. F_q sits inside as the constants, so the subfield is explicit.
class ExtensionField {
 public:
  static constexpr int kMaxDegree = 16;
  using Coeffs = std::array<GaloisField::Element, kMaxDegree>;
  struct Element {
    Coeffs c{};
    friend bool operator==(const Element& a, const Element& b) { return a.c == b.c; }
  };

  ExtensionField(std::shared_ptr<const GaloisField> base, int k) : base_(std::move(base)), k_(k) {
    if (!base_) throw std::invalid_argument("ExtensionField: null base");
    if (k < 1 || k > kMaxDegree) throw std::invalid_argument("ExtensionField: degree out of range");
    const auto h = detail::least_irreducible(*base_, k);
    modulus_.assign(h.begin(), h.end());
    // Relative traces of the power basis, Tr(z^i) = sum_t (z^i)^{q^t}.
    for (int i = 0; i < k_; ++i) {
      Element zi{};
      zi.c[static_cast<std::size_t>(i)] = 1;
      Element sum{}, conj = zi;
      for (int t = 0; t < k_; ++t) {
        sum = add(sum, conj);
        conj = pow(conj, base_->size());
      }
      for (int j = 1; j < k_; ++j) {
        if (sum.c[static_cast<std::size_t>(j)] != 0) throw std::logic_error("ExtensionField: trace left F_q");
      }
      basis_trace_[static_cast<std::size_t>(i)] = sum.c[0];
    }
  }

  const GaloisField& base() const { return *base_; }
  int degree() const { return k_; }
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < k_; ++i) s *= base_->size();
    return s;
  }
  const std::vector<GaloisField::Element>& modulus() const { return modulus_; }

  Element from_base(GaloisField::Element a) const {
    Element e{};
    e.c[0] = a;
    return e;
  }

  Element add(const Element& a, const Element& b) const {
    Element r{};
    for (int i = 0; i < k_; ++i) r.c[static_cast<std::size_t>(i)] = base_->add(a.c[static_cast<std::size_t>(i)], b.c[static_cast<std::size_t>(i)]);
    return r;
  }

  Element mul(const Element& a, const Element& b) const {
    const GaloisField& f = *base_;
    std::array<GaloisField::Element, 2 * kMaxDegree> r{};
    for (int i = 0; i < k_; ++i) {
      const auto ai = a.c[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      for (int j = 0; j < k_; ++j) {
        const auto bj = b.c[static_cast<std::size_t>(j)];
        if (bj != 0) r[static_cast<std::size_t>(i + j)] = f.add(r[static_cast<std::size_t>(i + j)], f.mul(ai, bj));
      }
    }
    for (int i = 2 * k_ - 2; i >= k_; --i) {
      const auto c = r[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      for (int t = 0; t < k_; ++t) {
        const auto idx = static_cast<std::size_t>(i - k_ + t);
        r[idx] = f.sub(r[idx], f.mul(c, modulus_[static_cast<std::size_t>(t)]));
      }
    }
    Element out{};
    for (int i = 0; i < k_; ++i) out.c[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)];
    return out;
  }

  Element pow(Element a, std::uint64_t e) const {
    Element r = from_base(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  /// Tr_{F_{q^k}/F_q}.
  GaloisField::Element relative_trace(const Element& a) const {
    GaloisField::Element s = 0;
    for (int i = 0; i < k_; ++i) s = base_->add(s, base_->mul(a.c[static_cast<std::size_t>(i)], basis_trace_[static_cast<std::size_t>(i)]));
    return s;
  }

  /// Tr_{F_{q^k}/F_p}.
  int absolute_trace(const Element& a) const { return base_->trace(relative_trace(a)); }

  /// Element with index t in 0..size()-1 (base-q digits as coordinates).
  Element element(std::uint64_t t) const {
    Element e{};
    for (int i = 0; i < k_; ++i, t /= base_->size()) e.c[static_cast<std::size_t>(i)] = static_cast<GaloisField::Element>(t % base_->size());
    return e;
  }

 private:
  std::shared_ptr<const GaloisField> base_;
  int k_;
  std::vector<GaloisField::Element> modulus_;
  std::array<GaloisField::Element, kMaxDegree> basis_trace_{};
};

}  // namespace dworkbench
