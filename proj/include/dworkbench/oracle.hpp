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

// Exponential sums S_k = sum_{x in F_{q^k}} zeta_p^{Tr f(x)} by exhaustive
// enumeration, and the L-function exp(sum S_k T^k / k) = 1 + b_1 T + ... +
// b_{d-1} T^{d-1} with exact coefficients in Z[zeta_p].
//
// Enumeration only records a histogram keyed by Tr(f_0(x)) and the relative
// traces Tr_{q^k/q}(x^e) of the free monomials, so one pass over F_{q^k}
// serves every member f_0 + sum c_e x^e, c_e in F_q, of a family.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dworkbench/core.hpp"
#include "dworkbench/cyclotomic.hpp"
#include "dworkbench/finite_field.hpp"
#include "dworkbench/parallel.hpp"
#include "dworkbench/polygon.hpp"

namespace dworkbench {

using FieldPtr = std::shared_ptr<const GaloisField>;

/// f = sum coefficient * x^exponent over F_q; zero coefficients are dropped.
struct FqPolynomial {
  std::map<int, GaloisField::Element> terms;

  int degree() const { return terms.empty() ? -1 : terms.rbegin()->first; }
  std::string str(const GaloisField& f) const {
    std::string s;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += (it->second == 1 ? "" : f.str(it->second) + "*") + "x^" + std::to_string(it->first);
    }
    return s.empty() ? "0" : s;
  }
};

/// f_0 + sum_r c_r x^{e_r} with the c_r ranging over F_q.
struct PolynomialFamily {
  FqPolynomial fixed;
  std::vector<int> free_exponents;

  FqPolynomial member(const std::vector<GaloisField::Element>& params) const {
    if (params.size() != free_exponents.size()) throw std::invalid_argument("family: wrong parameter count");
    FqPolynomial f = fixed;
    for (std::size_t r = 0; r < params.size(); ++r) {
      if (params[r] != 0) f.terms[free_exponents[r]] = params[r];
    }
    return f;
  }
};

struct OracleOptions {
  std::uint64_t cap = 100'000'000;           // max field size enumerated per sum
  std::uint64_t weil_check_cap = 1'000'000;  // also enumerate F_{q^d} to confirm b_d = 0 when q^d <= this
};

namespace detail {

inline void validate_polynomial(const GaloisField& field, const FqPolynomial& f) {
  if (f.terms.empty()) throw std::invalid_argument("oracle: f must be nonzero");
  for (const auto& [e, c] : f.terms) {
    if (e < 1) throw std::invalid_argument("oracle: f must have zero constant term");
    if (c == 0 || c >= field.size()) throw std::invalid_argument("oracle: bad coefficient");
  }
  if (f.degree() % field.characteristic() == 0) throw std::invalid_argument("oracle: gcd(deg f, p) must be 1");
}

inline std::uint64_t checked_power(std::uint64_t q, int k, std::uint64_t cap) {
  std::uint64_t s = 1;
  for (int i = 0; i < k; ++i) {
    if (s > cap / q) return cap + 1;
    s *= q;
  }
  return s;
}

}  // namespace detail

/// Counts of x in F_{q^k} by (Tr f_0(x), Tr_{q^k/q}(x^{e_1}), ...).
class TraceHistogram {
 public:
  TraceHistogram(FieldPtr field, int k, const PolynomialFamily& family, std::uint64_t cap)
      : field_(std::move(field)), k_(k), free_count_(family.free_exponents.size()) {
    if (k < 1) throw std::invalid_argument("TraceHistogram: k must be >= 1");
    const GaloisField& fq = *field_;
    const std::uint64_t size = detail::checked_power(fq.size(), k, cap);
    if (size > cap) {
      throw FieldTooLarge("exponential sum over F_" + std::to_string(fq.size()) + "^" + std::to_string(k) +
                          " exceeds the enumeration cap " + std::to_string(cap));
    }
    const int p = fq.characteristic();
    std::uint64_t keys = static_cast<std::uint64_t>(p);
    for (std::size_t r = 0; r < free_count_; ++r) keys *= fq.size();
    if (keys > (1u << 26)) throw FieldTooLarge("TraceHistogram: too many free parameters");

    const ExtensionField ext(field_, k);
    int max_e = family.fixed.degree();
    for (int e : family.free_exponents) max_e = std::max(max_e, e);
    const std::vector<std::pair<int, GaloisField::Element>> fixed(family.fixed.terms.begin(), family.fixed.terms.end());
    const std::vector<int>& free = family.free_exponents;

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(worker_count(), size / 4096 + 1));
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(keys, 0));
    parallel_for(0, workers, [&](std::size_t w) {
      const std::uint64_t lo = size * w / workers, hi = size * (w + 1) / workers;
      std::vector<ExtensionField::Element> pw(static_cast<std::size_t>(max_e) + 1);
      auto& counts = partial[w];
      for (std::uint64_t t = lo; t < hi; ++t) {
        pw[1] = ext.element(t);
        for (int e = 2; e <= max_e; ++e) pw[static_cast<std::size_t>(e)] = ext.mul(pw[static_cast<std::size_t>(e - 1)], pw[1]);
        int t0 = 0;
        for (const auto& [e, c] : fixed) t0 += fq.trace(fq.mul(c, ext.relative_trace(pw[static_cast<std::size_t>(e)])));
        std::uint64_t key = 0;
        for (std::size_t r = free.size(); r-- > 0;) key = key * fq.size() + ext.relative_trace(pw[static_cast<std::size_t>(free[r])]);
        ++counts[key * p + static_cast<std::uint64_t>(t0 % p)];
      }
    });
    counts_ = std::move(partial[0]);
    for (std::size_t w = 1; w < workers; ++w) {
      for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += partial[w][i];
    }
  }

  int k() const { return k_; }

  /// Number of x with Tr(f(x)) = t for each t in F_p, f the member at params.
  std::vector<std::uint64_t> trace_counts(const std::vector<GaloisField::Element>& params) const {
    if (params.size() != free_count_) throw std::invalid_argument("TraceHistogram: wrong parameter count");
    const GaloisField& fq = *field_;
    const int p = fq.characteristic();
    std::vector<std::uint64_t> out(static_cast<std::size_t>(p), 0);
    const std::uint64_t groups = counts_.size() / static_cast<std::size_t>(p);
    for (std::uint64_t key = 0; key < groups; ++key) {
      int shift = 0;
      std::uint64_t rest = key;
      for (std::size_t r = 0; r < free_count_; ++r, rest /= fq.size()) {
        shift += fq.trace(fq.mul(params[r], static_cast<GaloisField::Element>(rest % fq.size())));
      }
      for (int t0 = 0; t0 < p; ++t0) out[static_cast<std::size_t>((t0 + shift) % p)] += counts_[key * p + static_cast<std::uint64_t>(t0)];
    }
    return out;
  }

  CyclotomicInteger exp_sum(const std::vector<GaloisField::Element>& params) const {
    const auto counts = trace_counts(params);
    std::vector<BigInt> w(counts.begin(), counts.end());
    return CyclotomicInteger::from_powers(field_->characteristic(), w);
  }

 private:
  FieldPtr field_;
  int k_;
  std::size_t free_count_;
  std::vector<std::uint64_t> counts_;
};

inline CyclotomicInteger exp_sum(const FieldPtr& field, const FqPolynomial& f, int k,
                                 std::uint64_t cap = OracleOptions{}.cap) {
  detail::validate_polynomial(*field, f);
  return TraceHistogram(field, k, PolynomialFamily{f, {}}, cap).exp_sum({});
}

enum class OracleMode { Full, Half };

/// b_0..b_{d-1}. In Half mode only b_0..b_h, h = floor((d-1)/2), are
/// computed; valuations of the rest follow from the functional equation
/// ord_q b_{d-1-n} = ord_q b_n + (d-1)/2 - n.
struct LPolynomial {
  int p = 0;
  int a = 1;  // coefficients live over F_{p^a}
  int d = 1;
  OracleMode mode = OracleMode::Full;
  std::vector<CyclotomicInteger> power_sums;  // S_1, S_2, ...
  std::vector<CyclotomicInteger> b;           // computed coefficients, b[0] = 1
  std::vector<ExtendedRational> valuations;   // ord_q b_n, n = 0..d-1
  bool weil_checked = false;                  // b_d computed and found zero
};

/// n b_n = sum_{k=1}^n S_k b_{n-k}.
inline std::vector<CyclotomicInteger> coefficients_from_power_sums(int p, const std::vector<CyclotomicInteger>& s,
                                                                   std::size_t count) {
  if (s.size() + 1 < count) throw std::invalid_argument("coefficients_from_power_sums: not enough power sums");
  std::vector<CyclotomicInteger> b{CyclotomicInteger::integer(p, 1)};
  for (std::size_t n = 1; n < count; ++n) {
    CyclotomicInteger acc(p);
    for (std::size_t k = 1; k <= n; ++k) acc += s[k - 1] * b[n - k];
    b.push_back(acc.divided_exactly(BigInt(n)));
  }
  return b;
}

inline LPolynomial l_polynomial_from_power_sums(int p, int a, int d, std::vector<CyclotomicInteger> s, OracleMode mode) {
  if (d < 1) throw std::invalid_argument("l_polynomial: d must be >= 1");
  LPolynomial out;
  out.p = p;
  out.a = a;
  out.d = d;
  out.mode = mode;
  const std::size_t computed = mode == OracleMode::Full ? static_cast<std::size_t>(d) : static_cast<std::size_t>((d - 1) / 2 + 1);
  out.b = coefficients_from_power_sums(p, s, std::min(computed, s.size() + 1));
  if (mode == OracleMode::Full && s.size() >= static_cast<std::size_t>(d)) {
    const auto extended = coefficients_from_power_sums(p, s, static_cast<std::size_t>(d) + 1);
    if (!extended.back().is_zero()) throw InexactDivision("l_polynomial: b_d is nonzero, degree bound violated");
    out.weil_checked = true;
  }
  out.valuations.resize(static_cast<std::size_t>(d));
  for (std::size_t n = 0; n < out.b.size(); ++n) out.valuations[n] = ord_q(out.b[n], a);
  for (int n = static_cast<int>(out.b.size()); n < d; ++n) {
    const ExtendedRational& mirror = out.valuations[static_cast<std::size_t>(d - 1 - n)];
    out.valuations[static_cast<std::size_t>(n)] =
        mirror.is_infinite() ? mirror : ExtendedRational(mirror.value() + n - Rational(d - 1, 2));
  }
  if (s.size() > static_cast<std::size_t>(d - 1)) s.erase(s.begin() + (d - 1), s.end());
  out.power_sums = std::move(s);
  return out;
}

/// Picks Full when q^{d-1} fits under the cap, else Half when q^{floor((d-1)/2)} does.
inline OracleMode choose_mode(std::uint64_t q, int d, const OracleOptions& options) {
  if (d <= 1 || detail::checked_power(q, d - 1, options.cap) <= options.cap) return OracleMode::Full;
  if (detail::checked_power(q, (d - 1) / 2, options.cap) <= options.cap) return OracleMode::Half;
  throw FieldTooLarge("oracle: q^floor((d-1)/2) exceeds the enumeration cap");
}

inline int sums_needed(int d, OracleMode mode) { return mode == OracleMode::Full ? d - 1 : (d - 1) / 2; }

inline std::vector<TraceHistogram> family_histograms(const FieldPtr& field, const PolynomialFamily& family, int d,
                                                     OracleMode mode, const OracleOptions& options, bool weil) {
  std::vector<TraceHistogram> out;
  const int top = sums_needed(d, mode) + (weil ? 1 : 0);
  for (int k = 1; k <= top; ++k) out.emplace_back(field, k, family, options.cap);
  return out;
}

inline bool weil_check_possible(const FieldPtr& field, int d, OracleMode mode, const OracleOptions& options) {
  return mode == OracleMode::Full && detail::checked_power(field->size(), d, options.weil_check_cap) <= options.weil_check_cap;
}

inline LPolynomial l_polynomial(const FieldPtr& field, const FqPolynomial& f, const OracleOptions& options = {}) {
  detail::validate_polynomial(*field, f);
  const int d = f.degree();
  const OracleMode mode = choose_mode(field->size(), d, options);
  const bool weil = weil_check_possible(field, d, mode, options);
  std::vector<CyclotomicInteger> s;
  for (const auto& h : family_histograms(field, PolynomialFamily{f, {}}, d, mode, options, weil)) s.push_back(h.exp_sum({}));
  return l_polynomial_from_power_sums(field->characteristic(), field->degree(), d, std::move(s), mode);
}

inline NewtonPolygon np_of_l(const LPolynomial& l) {
  std::vector<std::pair<std::int64_t, ExtendedRational>> pts;
  for (int n = 0; n < l.d; ++n) pts.emplace_back(n, l.valuations[static_cast<std::size_t>(n)]);
  return lower_hull(std::move(pts));
}

inline bool is_supersingular(const LPolynomial& l) {
  const NewtonPolygon np = np_of_l(l);
  return l.d == 1 || (np.width() == l.d - 1 && is_half_line(np));
}

inline bool is_supersingular_oracle(const FieldPtr& field, const FqPolynomial& f, const OracleOptions& options = {}) {
  return is_supersingular(l_polynomial(field, f, options));
}

/// The same L-function over F_{q^r}: power sums S'_k = S_{rk}, with S_n for
/// n >= d recovered from b (b_n = 0 beyond d-1).
inline LPolynomial base_change(const LPolynomial& l, int r) {
  if (r < 1) throw std::invalid_argument("base_change: r must be >= 1");
  if (l.mode != OracleMode::Full || static_cast<int>(l.b.size()) != l.d) {
    throw std::invalid_argument("base_change: needs every coefficient");
  }
  const int p = l.p, d = l.d;
  const int top = r * d;  // one extra so the new b_d can be checked
  std::vector<CyclotomicInteger> s;
  for (int n = 1; n <= top; ++n) {
    CyclotomicInteger acc = n < d ? l.b[static_cast<std::size_t>(n)] * BigInt(n) : CyclotomicInteger(p);
    for (int k = 1; k < n; ++k) {
      if (n - k < d) acc -= s[static_cast<std::size_t>(k - 1)] * l.b[static_cast<std::size_t>(n - k)];
    }
    s.push_back(std::move(acc));
  }
  std::vector<CyclotomicInteger> s_r;
  for (int k = 1; k <= d; ++k) s_r.push_back(s[static_cast<std::size_t>(r * k - 1)]);
  return l_polynomial_from_power_sums(p, l.a * r, d, std::move(s_r), OracleMode::Full);
}

/// Points on y^p - y = f(x) over F_{q^k}, including the one point at infinity.
inline BigInt curve_point_count(const FieldPtr& field, const FqPolynomial& f, int k,
                                std::uint64_t cap = OracleOptions{}.cap) {
  detail::validate_polynomial(*field, f);
  const auto counts = TraceHistogram(field, k, PolynomialFamily{f, {}}, cap).trace_counts({});
  return 1 + BigInt(field->characteristic()) * counts[0];
}

/// 1 + q^k + sum_{j=1}^{p-1} sigma_j(S_k), which must equal the direct count.
inline BigInt point_count_from_sum(const CyclotomicInteger& s_k, std::uint64_t q, int k) {
  CyclotomicInteger total(s_k.prime());
  for (int j = 1; j < s_k.prime(); ++j) total += s_k.galois(j);
  for (std::size_t i = 1; i < total.coefficients().size(); ++i) {
    if (total.coefficients()[i] != 0) throw std::logic_error("point_count_from_sum: Galois sum is not rational");
  }
  return 1 + boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(k)) + total.coefficients()[0];
}

struct SweepEntry {
  std::vector<GaloisField::Element> params;
  LPolynomial l;
  NewtonPolygon polygon;
  bool supersingular = false;
};

/// Every member of the family over F_q, from one histogram pass per k.
inline std::vector<SweepEntry> sweep_family(const FieldPtr& field, const PolynomialFamily& family,
                                            const OracleOptions& options = {}) {
  detail::validate_polynomial(*field, family.fixed);
  const int d = family.fixed.degree();
  for (int e : family.free_exponents) {
    if (e < 1 || e >= d) throw std::invalid_argument("sweep_family: free exponents must lie in [1, d)");
  }
  const OracleMode mode = choose_mode(field->size(), d, options);
  const auto hists = family_histograms(field, family, d, mode, options, false);
  const std::size_t r = family.free_exponents.size();
  std::uint64_t members = 1;
  for (std::size_t i = 0; i < r; ++i) members *= field->size();
  std::vector<SweepEntry> out(members);
  parallel_for(0, members, [&](std::size_t idx) {
    std::vector<GaloisField::Element> params(r);
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < r; ++i, rest /= field->size()) params[i] = static_cast<GaloisField::Element>(rest % field->size());
    std::vector<CyclotomicInteger> s;
    for (const auto& h : hists) s.push_back(h.exp_sum(params));
    SweepEntry e{params, l_polynomial_from_power_sums(field->characteristic(), field->degree(), d, std::move(s), mode), {}, false};
    e.polygon = np_of_l(e.l);
    e.supersingular = is_supersingular(e.l);
    out[idx] = std::move(e);
  });
  return out;
}

inline void to_json(nlohmann::json& j, const CyclotomicInteger& x) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& v : x.coefficients()) c.push_back(v.str());
  j = std::move(c);
}

inline void to_json(nlohmann::json& j, const LPolynomial& l) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : l.valuations) vals.push_back(v.str());
  j = {{"p", l.p},
       {"a", l.a},
       {"degree", l.d - 1},
       {"mode", l.mode == OracleMode::Full ? "full" : "half"},
       {"power_sums", l.power_sums},
       {"coefficients", l.b},
       {"valuations", std::move(vals)},
       {"weil_checked", l.weil_checked}};
}

}  // namespace dworkbench
