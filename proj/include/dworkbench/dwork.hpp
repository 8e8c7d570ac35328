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

// Dwork's trace formula, truncated. The L-function of f over F_q with
// q = p^a has Newton polygon equal to the lower hull of (n, ord_q C_n), where
// det(I - T F_a) = sum C_n T^n, F = (tau^{-1} G_{p i - j})_{i, j >= 1},
// F_a = F F^{tau^{-1}} ... F^{tau^{-(a-1)}}, and G_n are the coefficients of
// prod_l E(gamma a_l x^l) for the Artin-Hasse exponential E.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dworkbench/charpoly.hpp"
#include "dworkbench/core.hpp"
#include "dworkbench/finite_field.hpp"
#include "dworkbench/oracle.hpp"
#include "dworkbench/padic.hpp"
#include "dworkbench/polygon.hpp"
#include "dworkbench/tropical_certifier.hpp"

namespace dworkbench {

/// Smallest J with p^J/(p-1) - J > N: beyond it the Artin-Hasse terms
/// gamma^{p^j}/p^j vanish mod p^N.
inline int minimal_artin_hasse_level(int p, int n) {
  for (int j = 0;; ++j) {
    const Rational lhs = Rational(ipow(BigInt(p), static_cast<unsigned>(j)), p - 1) - j;
    if (lhs > n) return j;
  }
}

struct PrecisionPolicy {
  int N = 0;  // ring arithmetic mod p^N
  int L = 0;  // matrix truncation
  int M = 0;  // series degree
  int J = 0;  // Artin-Hasse level

  /// N = a(d-1) + 4, L = 2 ell, M = pL, J minimal.
  static PrecisionPolicy defaults(int p, int a, int d, int ell) {
    PrecisionPolicy policy;
    policy.N = a * (d - 1) + 4;
    policy.L = 2 * ell;
    policy.M = p * policy.L;
    policy.J = minimal_artin_hasse_level(p, policy.N);
    return policy;
  }

  void validate(int p) const {
    if (N < 1 || L < 1) throw std::invalid_argument("precision policy: N and L must be positive");
    if (M < p * L) throw std::invalid_argument("precision policy: M must be at least p*L");
    const Rational tail = Rational(ipow(BigInt(p), static_cast<unsigned>(J)), p - 1) - J;
    if (!(tail > N)) throw PrecisionExhausted("precision policy: J too small for N");
  }
};

// ---------------------------------------------------------------------------
// gamma and the Artin-Hasse coefficients
// ---------------------------------------------------------------------------

/// Root of sum_{j <= J} X^{p^j}/p^j with pi-adic valuation 1, by Newton
/// iteration from zeta - 1. Works at precision N + J so the divisions by p^j
/// are exact, then returns the value mod p^N in `ring` (unramified degree 1 or more).
inline MixedElement compute_gamma(const RingPtr& ring, const PrecisionPolicy& policy) {
  const int p = ring->prime();
  const int work_n = policy.N + policy.J;
  const RingPtr work = MixedRing::create(p, work_n, 1);
  const auto pj = [&](int j) { return ipow(BigInt(p), static_cast<unsigned>(j)); };

  const auto divide = [&](const MixedElement& x, const BigInt& d) {
    std::vector<BigInt> c = x.coefficients();
    for (auto& v : c) {
      if (v % d != 0) throw PrecisionExhausted("compute_gamma: inexact division by p^j");
      v /= d;
    }
    return work->make(std::move(c));
  };
  // g and g' evaluated at X; g(X) is only meaningful mod p^N.
  const auto evaluate = [&](const MixedElement& x, MixedElement& g, MixedElement& dg) {
    g = x;
    dg = work->one();
    MixedElement power = x;  // X^{p^j}
    for (int j = 1; j <= policy.J; ++j) {
      power = work->pow(power, static_cast<std::uint64_t>(p));
      g = g + divide(power, pj(j));
      dg = dg + work->pow(x, static_cast<std::uint64_t>(pj(j) - 1));
    }
  };

  MixedElement x = work->zeta_power(1) - work->one();
  const BigInt target = ipow(BigInt(p), static_cast<unsigned>(policy.N));
  for (int it = 0; it < 64; ++it) {
    MixedElement g, dg;
    evaluate(x, g, dg);
    // Keep the Newton step only modulo p^N (g is known only there).
    std::vector<BigInt> gc = g.coefficients();
    for (auto& v : gc) v %= target;
    const MixedElement step = work->make(gc) * work->inverse(dg);
    std::vector<BigInt> sc = step.coefficients();
    bool zero = true;
    for (auto& v : sc) {
      v %= target;
      if (v != 0) zero = false;
    }
    if (zero) {
      std::vector<BigInt> c(ring->slots(), 0);
      for (int i = 0; i < p - 1; ++i) c[ring->index(i, 0)] = x.coefficients()[static_cast<std::size_t>(i)] % ring->modulus();
      return ring->make(std::move(c));
    }
    x = x - work->make(sc);
  }
  throw NonConvergence("compute_gamma: Newton iteration did not stabilize");
}

/// Coefficients e_m of the Artin-Hasse exponential, exact rationals with
/// denominators prime to p: m e_m = sum_{p^j <= m} e_{m - p^j}.
inline std::vector<Rational> artin_hasse_series(int p, int count) {
  std::vector<Rational> e{Rational(1)};
  for (int m = 1; m < count; ++m) {
    Rational s = 0;
    for (std::int64_t pj = 1; pj <= m; pj *= p) s += e[static_cast<std::size_t>(m - pj)];
    e.push_back(s / m);
  }
  return e;
}

/// lambda_0..lambda_M with E(gamma x) = sum lambda_m x^m.
inline std::vector<MixedElement> artin_hasse_coeffs(const MixedElement& gamma, const PrecisionPolicy& policy) {
  const RingPtr& ring = gamma.ring();
  const auto e = artin_hasse_series(ring->prime(), policy.M + 1);
  std::vector<MixedElement> out;
  MixedElement power = ring->one();
  for (int m = 0; m <= policy.M; ++m) {
    const Rational& em = e[static_cast<std::size_t>(m)];
    const BigInt den = boost::multiprecision::denominator(em);
    if (den % ring->prime() == 0) throw PrecisionExhausted("artin_hasse_coeffs: coefficient is not p-integral");
    const BigInt unit = ring->reduce(boost::multiprecision::numerator(em) * mod_inverse(den, ring->modulus()));
    out.push_back(ring->scale(power, unit));
    power = power * gamma;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Teichmuller lifts and G_n
// ---------------------------------------------------------------------------

/// Teichmuller lift of c in F_{p^m}, where `field` must be F_p (m = 1) or
/// F_{p^m} with the same least irreducible modulus as the ring.
inline MixedElement teichmuller_lift(const RingPtr& ring, const GaloisField& field, GaloisField::Element c) {
  const int m = ring->unramified_degree();
  std::vector<int> coords;
  if (field.degree() == m) {
    if (field.modulus() != ring->residue_modulus()) throw std::invalid_argument("teichmuller_lift: modulus mismatch");
    coords = field.coordinates(c);
  } else if (c < static_cast<GaloisField::Element>(field.characteristic())) {
    coords.assign(static_cast<std::size_t>(m), 0);
    coords[0] = static_cast<int>(c);
  } else {
    throw std::invalid_argument("teichmuller_lift: element outside the ring's residue field");
  }
  std::vector<BigInt> lift(ring->slots(), 0);
  if (m == 1) {
    lift[0] = coords[0];
  } else {
    for (int j = 0; j < m; ++j) lift[ring->index(0, j)] = coords[static_cast<std::size_t>(j)];
  }
  MixedElement x = ring->make(std::move(lift));
  const std::uint64_t q = static_cast<std::uint64_t>(boost::multiprecision::pow(BigInt(ring->prime()), static_cast<unsigned>(m)));
  for (int it = 0; it <= ring->precision() + 1; ++it) {
    MixedElement next = ring->pow(x, q);
    if (next == x) return x;
    x = std::move(next);
  }
  throw NonConvergence("teichmuller_lift: iteration did not stabilize");
}

/// G_0..G_M from prod_l sum_m lambda_m a_l^m x^{l m}.
inline std::vector<MixedElement> g_coefficients(const std::map<int, MixedElement>& lifted,
                                                const std::vector<MixedElement>& lambda, const PrecisionPolicy& policy) {
  if (lifted.empty()) throw std::invalid_argument("g_coefficients: empty polynomial");
  if (static_cast<int>(lambda.size()) < policy.M + 1) throw PrecisionExhausted("g_coefficients: not enough lambda_m");
  const RingPtr& ring = lambda[0].ring();
  const std::size_t len = static_cast<std::size_t>(policy.M) + 1;
  std::vector<MixedElement> g(len, ring->zero());
  g[0] = ring->one();
  for (const auto& [l, a_hat] : lifted) {
    if (l < 1) throw std::invalid_argument("g_coefficients: exponents must be >= 1");
    std::vector<MixedElement> factor;  // factor[m] = lambda_m a^m
    MixedElement power = ring->one();
    for (std::size_t m = 0; m * static_cast<std::size_t>(l) < len; ++m) {
      factor.push_back(lambda[m] * power);
      power = power * a_hat;
    }
    std::vector<MixedElement> next(len, ring->zero());
    parallel_for(0, len, [&](std::size_t n) {
      auto acc = ring->accumulator();
      for (std::size_t m = 0; m < factor.size() && m * static_cast<std::size_t>(l) <= n; ++m) {
        const auto& lower = g[n - m * static_cast<std::size_t>(l)];
        if (!lower.is_zero()) ring->mul_add(acc, lower, factor[m]);
      }
      next[n] = ring->reduce(acc);
    });
    g = std::move(next);
  }
  return g;
}

// ---------------------------------------------------------------------------
// F, F_a and the minor sums
// ---------------------------------------------------------------------------

using DworkMatrix = Matrix<MixedElement>;

/// F(i, j) = tau^{-1}(G_{p i - j}) for 1 <= i, j <= L (stored 0-based).
inline DworkMatrix build_F(const std::vector<MixedElement>& g, const PrecisionPolicy& policy) {
  const RingPtr& ring = g.at(0).ring();
  const int p = ring->prime();
  const auto L = static_cast<std::size_t>(policy.L);
  DworkMatrix f(L, ring->zero());
  parallel_for(0, L * L, [&](std::size_t k) {
    const std::int64_t i = static_cast<std::int64_t>(k / L) + 1, j = static_cast<std::int64_t>(k % L) + 1;
    const std::int64_t n = p * i - j;
    if (n < 0) return;
    if (n >= static_cast<std::int64_t>(g.size())) throw PrecisionExhausted("build_F: series too short for p*L");
    f(k / L, k % L) = ring->frobenius(g[static_cast<std::size_t>(n)], -1);
  });
  return f;
}

inline DworkMatrix twist(const DworkMatrix& m, std::int64_t e) {
  if (m.size() == 0) return m;
  const RingPtr ring = m(0, 0).ring();
  if (mod_floor(e, ring->unramified_degree()) == 0) return m;
  return m.map([&](const MixedElement& x) { return ring->frobenius(x, e); });
}

/// F F^{tau^{-1}} ... F^{tau^{-(a-1)}} by twisted binary powering:
/// P_{2n} = P_n tau^{-n}(P_n), P_{n+1} = P_n tau^{-n}(F).
inline DworkMatrix product_Fa(const DworkMatrix& f, int a) {
  if (a < 1) throw std::invalid_argument("product_Fa: a must be >= 1");
  int top = 0;
  while ((a >> (top + 1)) > 0) ++top;
  DworkMatrix acc = f;
  int n = 1;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = acc * twist(acc, -n);
    n *= 2;
    if ((a >> bit) & 1) {
      acc = acc * twist(f, -n);
      n += 1;
    }
  }
  return acc;
}

struct MinorSumEntry {
  MixedElement value;
  PiValuation raw;                    // pi-adic reading mod p^N
  ExtendedRational ord_q;             // raw / ((p-1) a); lower bound when !raw.exact
  Rational path_bound;                // ord_q of every term omitted by truncating at L
  std::optional<Rational> cert_bound; // n sigma + eps(L)/a for omitted principal minors
  bool resolved = false;              // exact reading strictly below every omission bound
};

struct MinorSums {
  int p = 0, a = 1, d = 1, L = 0;
  std::vector<MinorSumEntry> entries;  // n = 0..d-1
};

/// ord_q lower bound for every term of C_n lost to truncation at L, whether
/// a principal-minor index or an intermediate product index exceeds L.
/// From ord_p G_k >= k/(d(p-1)), a path i = k_0 -> ... -> k_a = j through F
/// has ord_p >= ((p-1) sum_{t<a} k_t + k_0 - k_a)/(d(p-1)); around a
/// permutation the k_0 - k_a drift cancels, n(a-1) intermediate indices are
/// >= 1 and the n distinct starts sum to >= n(n-1)/2 + (one index > L).
inline Rational truncation_path_bound(int n, int d, int a, int L) {
  return Rational(L + 1 + n * (n - 1) / 2 + n * (a - 1), d * a);
}

inline MinorSums minor_sums(const DworkMatrix& fa, int p, int a, int d, const std::optional<Certificate>& cert,
                            const std::optional<Rational>& cert_excess = std::nullopt) {
  if (!cert) {
    throw TailBoundUnavailable("minor_sums: no certificate supplied, the truncation tail cannot be bounded");
  }
  const RingPtr ring = fa(0, 0).ring();
  const int L = static_cast<int>(fa.size());
  const Rational eps = cert_excess ? *cert_excess : tail_excess(*cert, std::max(L, cert->params.ell));
  // The certificate speaks about products of a multiple of k factors only.
  const auto coeffs = truncated_charpoly(fa, static_cast<std::size_t>(d), ring->zero(), ring->one());
  MinorSums out{p, a, d, L, {}};
  for (int n = 0; n < d; ++n) {
    MinorSumEntry e;
    e.value = coeffs[static_cast<std::size_t>(n)];
    e.raw = ring->valuation(e.value);
    e.ord_q = ExtendedRational(Rational(e.raw.value, (p - 1) * a));
    e.path_bound = truncation_path_bound(n, d, a, L);
    if (n > 0 && a % cert->params.k == 0) e.cert_bound = cert->params.sigma * n + eps / a;
    // Omitted principal minors are bounded by both arguments, omitted
    // intermediate paths only by the path bound.
    const Rational omission = e.path_bound;
    e.resolved = n == 0 || (e.raw.exact && e.ord_q.value() < omission);
    out.entries.push_back(std::move(e));
  }
  return out;
}

struct MinorPolygon {
  NewtonPolygon polygon;
  std::vector<bool> unresolved;  // per n
};

inline MinorPolygon np_from_minors(const MinorSums& sums) {
  std::vector<std::pair<std::int64_t, ExtendedRational>> pts;
  MinorPolygon out;
  for (int n = 0; n < sums.d; ++n) {
    const auto& e = sums.entries[static_cast<std::size_t>(n)];
    pts.emplace_back(n, e.raw.exact ? e.ord_q : ExtendedRational::infinity());
    out.unresolved.push_back(!e.resolved);
  }
  out.polygon = lower_hull(std::move(pts));
  return out;
}

// ---------------------------------------------------------------------------
// Whole pipeline
// ---------------------------------------------------------------------------

struct EntryCheck {
  bool all_exceed = true;         // ord_p (F_a)_{ij} > sigma a + (i - j)/s for all i, j <= L
  Rational min_margin;            // min of ord_p - bound over exact readings
  std::size_t limit_readings = 0; // entries that vanished mod p^N
  std::vector<std::vector<PiValuation>> readings;  // pi-adic, row-major
};

struct DworkReport {
  int p = 0, a = 1, d = 1;
  int ring_degree = 1;
  PrecisionPolicy policy;
  std::vector<PiValuation> lambda_valuations;
  MinorSums sums;
  MinorPolygon polygon;
  std::optional<EntryCheck> entry_check;
  bool certified_polygon = false;  // every hull input resolved
};

inline EntryCheck check_entry_bounds(const DworkMatrix& fa, const Certificate& cert, int a) {
  const RingPtr ring = fa(0, 0).ring();
  const int p = ring->prime();
  EntryCheck out;
  out.readings.resize(fa.size());
  bool first = true;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    for (std::size_t j = 0; j < fa.size(); ++j) {
      const Rational bound = cert.params.sigma * a + Rational(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j), cert.params.s);
      const PiValuation v = ring->valuation(fa(i, j));
      out.readings[i].push_back(v);
      const Rational ord_p(v.value, p - 1);
      if (!v.exact) {
        ++out.limit_readings;
        if (!(ord_p > bound)) out.all_exceed = false;
        continue;
      }
      const Rational margin = ord_p - bound;
      if (!(margin > 0)) out.all_exceed = false;
      if (first || margin < out.min_margin) out.min_margin = margin;
      first = false;
    }
  }
  return out;
}

/// Runs the engine for f over F_q, q = p^a. Coefficients in F_p use a ring
/// without unramified part (tau is then trivial and F_a = F^a); otherwise the
/// ring carries the degree-a unramified extension.
inline DworkReport run_dwork(const FieldPtr& field, const FqPolynomial& f, int a, const PrecisionPolicy& policy,
                             const std::optional<Certificate>& cert) {
  detail::validate_polynomial(*field, f);
  const int p = field->characteristic();
  if (a % field->degree() != 0) throw std::invalid_argument("run_dwork: a must be a multiple of the field degree");
  policy.validate(p);
  if (!cert) throw TailBoundUnavailable("run_dwork: a certificate is required to bound the truncation tail");
  if (cert->pattern.prime() != p) throw std::invalid_argument("run_dwork: certificate is for another prime");
  bool prime_coeffs = true;
  for (const auto& [e, c] : f.terms) prime_coeffs = prime_coeffs && c < static_cast<GaloisField::Element>(p);
  const int ring_degree = prime_coeffs ? 1 : field->degree();
  if (!prime_coeffs && ring_degree != a) {
    throw std::invalid_argument("run_dwork: coefficients outside F_p need a equal to the field degree");
  }
  const RingPtr ring = MixedRing::create(p, policy.N, ring_degree);

  DworkReport report;
  report.p = p;
  report.a = a;
  report.d = f.degree();
  report.ring_degree = ring_degree;
  report.policy = policy;

  const MixedElement gamma = compute_gamma(ring, policy);
  const auto lambda = artin_hasse_coeffs(gamma, policy);
  for (const auto& l : lambda) report.lambda_valuations.push_back(ring->valuation(l));
  std::map<int, MixedElement> lifted;
  for (const auto& [e, c] : f.terms) lifted.emplace(e, teichmuller_lift(ring, *field, c));
  const auto g = g_coefficients(lifted, lambda, policy);
  const DworkMatrix fa = product_Fa(build_F(g, policy), a);
  if (a % cert->params.k == 0) report.entry_check = check_entry_bounds(fa, *cert, a);
  report.sums = minor_sums(fa, p, a, report.d, cert);
  report.polygon = np_from_minors(report.sums);
  report.certified_polygon = std::none_of(report.polygon.unresolved.begin(), report.polygon.unresolved.end(),
                                          [](bool u) { return u; });
  return report;
}

inline void to_json(nlohmann::json& j, const PrecisionPolicy& policy) {
  j = {{"N", policy.N}, {"L", policy.L}, {"M", policy.M}, {"J", policy.J}};
}

inline void to_json(nlohmann::json& j, const DworkReport& r) {
  nlohmann::json minors = nlohmann::json::array();
  for (int n = 0; n < r.d; ++n) {
    const auto& e = r.sums.entries[static_cast<std::size_t>(n)];
    nlohmann::json item = {{"n", n},
                           {"ord_q", e.ord_q.str()},
                           {"at_precision_limit", !e.raw.exact},
                           {"truncation_bound", to_string(e.path_bound)},
                           {"resolved", e.resolved}};
    if (e.cert_bound) item["certificate_bound"] = to_string(*e.cert_bound);
    minors.push_back(std::move(item));
  }
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& v : r.lambda_valuations) {
    lam.push_back(v.exact ? nlohmann::json(to_string(Rational(v.value, r.p - 1))) : nlohmann::json(">=" + to_string(Rational(v.value, r.p - 1))));
  }
  j = {{"p", r.p},
       {"a", r.a},
       {"d", r.d},
       {"unramified_degree", r.ring_degree},
       {"policy", r.policy},
       {"lambda_ord_p", std::move(lam)},
       {"minors", std::move(minors)},
       {"polygon", r.polygon.polygon},
       {"certified_polygon", r.certified_polygon}};
  if (r.entry_check) {
    j["entry_check"] = {{"all_exceed", r.entry_check->all_exceed},
                        {"min_margin", to_string(r.entry_check->min_margin)},
                        {"precision_limit_readings", r.entry_check->limit_readings}};
    // ord_p of each entry of F_a; null where the entry vanished at working precision.
    nlohmann::json heat = nlohmann::json::array();
    for (const auto& row : r.entry_check->readings) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& v : row) out.push_back(v.exact ? nlohmann::json(to_string(Rational(v.value, r.p - 1))) : nlohmann::json());
      heat.push_back(std::move(out));
    }
    j["entry_ord_p"] = std::move(heat);
  }
}

}  // namespace dworkbench
