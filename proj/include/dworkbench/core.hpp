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

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace dworkbench {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Error types. Every failure mode named by a public operation has its own
// exception class so callers (the CLI in particular) can map them to exit
// codes without string matching.
// ---------------------------------------------------------------------------

struct SignConditionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingOrigin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FieldTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InexactDivision : std::logic_error {
  using std::logic_error::logic_error;
};
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TailBoundUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small integer helpers.
// ---------------------------------------------------------------------------

constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Nonnegative residue of `n` modulo `m` (m > 0).
constexpr std::int64_t mod_floor(std::int64_t n, std::int64_t m) {
  const std::int64_t r = n % m;
  return r < 0 ? r + m : r;
}

/// floor(n / m) for m > 0.
constexpr std::int64_t div_floor(std::int64_t n, std::int64_t m) {
  return (n - mod_floor(n, m)) / m;
}

/// ceil(n / m) for m > 0.
constexpr std::int64_t div_ceil(std::int64_t n, std::int64_t m) { return -div_floor(-n, m); }

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

/// Number of times `p` divides a nonzero integer.
inline int p_adic_valuation(BigInt n, int p) {
  if (n == 0) throw std::invalid_argument("p_adic_valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Inverse of `a` modulo `m`; throws if gcd(a, m) != 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  BigInt s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    BigInt s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: not a unit");
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a", "-a", or "a/b".
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// ExtendedRational: an exact rational or +infinity. Used for valuations, where
// ord(0) = +infinity.
// ---------------------------------------------------------------------------

class ExtendedRational {
 public:
  ExtendedRational() = default;  // zero
  ExtendedRational(Rational value) : value_(std::move(value)) {}
  ExtendedRational(std::int64_t value) : value_(value) {}

  static ExtendedRational infinity() {
    ExtendedRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw std::logic_error("ExtendedRational::value on +infinity");
    return value_;
  }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedRational(a.value_ + b.value_);
  }
  friend ExtendedRational operator-(const ExtendedRational& a, const Rational& b) {
    if (a.infinite_) return infinity();
    return ExtendedRational(a.value_ - b);
  }
  friend ExtendedRational operator*(const ExtendedRational& a, const Rational& b) {
    if (b <= 0) throw std::invalid_argument("ExtendedRational scaling requires a positive factor");
    if (a.infinite_) return infinity();
    return ExtendedRational(a.value_ * b);
  }
  friend ExtendedRational operator/(const ExtendedRational& a, const Rational& b) {
    return a * (Rational(1) / b);
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return infinite_ ? std::string("inf") : to_string(value_); }

  static ExtendedRational parse(const std::string& text) {
    if (text == "inf" || text == "+inf") return infinity();
    return ExtendedRational(parse_rational(text));
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& r) { return os << r.str(); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

inline ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
  return b < a ? b : a;
}

}  // namespace dworkbench
