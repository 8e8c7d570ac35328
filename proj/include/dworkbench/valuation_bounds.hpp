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

// Lower bounds on ord_p G_n that depend only on which monomials of f are
// present. G_n is a sum of products prod_l lambda_{m_l} a_l^{m_l} with
// sum_l l*m_l = n, and ord_p lambda_m >= m/(p-1), so the smallest number of
// "coins" m_l needed to pay n with denominations Supp(f) bounds ord_p G_n.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dworkbench/core.hpp"

namespace dworkbench {

class SupportPattern {
 public:
  SupportPattern(int p, std::set<int> support) : p_(p), support_(std::move(support)) {
    if (p_ < 3 || !is_prime(p_)) throw std::invalid_argument("support pattern: p must be an odd prime");
    if (support_.empty()) throw std::invalid_argument("support pattern: empty support");
    degree_ = *support_.rbegin();
    if (degree_ < 2) throw std::invalid_argument("support pattern: degree must be >= 2");
    if (*support_.begin() < 1) throw std::invalid_argument("support pattern: exponents must be >= 1");
    if (std::gcd(degree_, p_) != 1) throw std::invalid_argument("support pattern: gcd(d, p) must be 1");
    table_ = std::make_shared<WeightTable>();
  }

  int prime() const { return p_; }
  int degree() const { return degree_; }
  const std::set<int>& support() const { return support_; }

  /// Test hook: shifts every g_bound by `offset`. Used only for fault injection.
  SupportPattern with_bound_offset(Rational offset) const {
    SupportPattern copy = *this;
    copy.bound_offset_ = std::move(offset);
    return copy;
  }
  const Rational& bound_offset() const { return bound_offset_; }

  /// min sum m_l over m_l >= 0 with sum l*m_l = n, or nullopt when n is not
  /// in the numerical semigroup generated by the support (including n < 0).
  std::optional<std::int64_t> weight(std::int64_t n) const {
    if (n < 0) return std::nullopt;
    const std::int64_t w = table_->lookup(n, support_);
    if (w == kUnreachable) return std::nullopt;
    return w;
  }

  friend bool operator==(const SupportPattern& a, const SupportPattern& b) {
    return a.p_ == b.p_ && a.support_ == b.support_ && a.bound_offset_ == b.bound_offset_;
  }

  std::string str() const {
    std::string s = "p=" + std::to_string(p_) + " support={";
    bool first = true;
    for (int l : support_) {
      s += (first ? "" : ",") + std::to_string(l);
      first = false;
    }
    return s + "}";
  }

 private:
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

  // Unbounded coin-change table, shared between copies of a pattern and grown
  // on demand under a lock.
  struct WeightTable {
    std::mutex mutex;
    std::vector<std::int64_t> best{0};

    std::int64_t lookup(std::int64_t n, const std::set<int>& support) {
      std::lock_guard<std::mutex> lock(mutex);
      if (static_cast<std::size_t>(n) >= best.size()) {
        const std::size_t old = best.size();
        const std::size_t target = std::max<std::size_t>(static_cast<std::size_t>(n) + 1, 2 * old);
        best.resize(target, kUnreachable);
        for (std::size_t x = old; x < target; ++x) {
          for (int l : support) {
            if (static_cast<std::size_t>(l) > x) break;
            const std::int64_t prev = best[x - l];
            if (prev != kUnreachable) best[x] = std::min(best[x], prev + 1);
          }
        }
      }
      return best[static_cast<std::size_t>(n)];
    }
  };

  int p_;
  int degree_ = 0;
  std::set<int> support_;
  Rational bound_offset_{0};
  std::shared_ptr<WeightTable> table_;
};

inline ExtendedRational min_weight(std::int64_t n, const SupportPattern& pattern) {
  const auto w = pattern.weight(n);
  if (!w) return ExtendedRational::infinity();
  return ExtendedRational(Rational(*w));
}

/// Lower bound for ord_p G_{p*i - j}, valid for every choice of coefficient
/// values on the support.
inline ExtendedRational g_bound(std::int64_t i, std::int64_t j, const SupportPattern& pattern) {
  if (i < 1 || j < 1) throw std::invalid_argument("g_bound: indices are 1-based");
  const int p = pattern.prime();
  const auto w = pattern.weight(p * i - j);
  if (!w) return ExtendedRational::infinity();
  return ExtendedRational(Rational(*w, p - 1) + pattern.bound_offset());
}

/// c_lin = 1/(d(p-1)): each coin pays at most d and weighs 1, hence
/// g_bound(i, j) >= c_lin * (p*i - j) whenever p*i >= j.
inline Rational linear_floor(const SupportPattern& pattern) {
  return Rational(1, pattern.degree() * (pattern.prime() - 1));
}

/// Piecewise bound for support {2,5}, p = 7 (inequality, not equality).
inline ExtendedRational closed_form_x1(std::int64_t n) {
  if (n < 0) return ExtendedRational::infinity();
  const std::int64_t q5 = div_floor(n, 5);
  const std::int64_t r5 = mod_floor(n, 5);
  const std::int64_t shift = (r5 == 1 || r5 == 3) ? q5 - 1 : q5;
  return ExtendedRational(Rational(n, 12) - Rational(shift, 4));
}

/// Exact value of min_weight(n, {1,7}) / 4.
inline ExtendedRational closed_form_x2(std::int64_t n) {
  if (n < 0) return ExtendedRational::infinity();
  return ExtendedRational(Rational(div_floor(n, 7) + mod_floor(n, 7), 4));
}

}  // namespace dworkbench
