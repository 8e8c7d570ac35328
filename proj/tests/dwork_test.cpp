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


#include <gtest/gtest.h>

#include <memory>

#include "dworkbench/dwork.hpp"

namespace dworkbench {
namespace {

const SupportPattern kX1(7, {2, 5});
const SupportPattern kX2(5, {1, 7});
const CertificateParams kX1Params{Rational(5, 12), 12, 12, 4};
const CertificateParams kX2Params{Rational(5, 12), 8, 27, 8};

FieldPtr field(int p, int m) { return std::make_shared<const GaloisField>(p, m); }

PrecisionPolicy small_policy(int p, int n, int L) {
  PrecisionPolicy policy;
  policy.N = n;
  policy.L = L;
  policy.M = p * L;
  policy.J = minimal_artin_hasse_level(p, n);
  return policy;
}

TEST(Policy, DefaultsAndLevel) {
  const auto x1 = PrecisionPolicy::defaults(7, 4, 5, 12);
  EXPECT_EQ(x1.N, 20);
  EXPECT_EQ(x1.L, 24);
  EXPECT_EQ(x1.M, 168);
  EXPECT_EQ(x1.J, 3);
  EXPECT_EQ(minimal_artin_hasse_level(3, 8), 3);
  PrecisionPolicy bad = x1;
  bad.J = 1;
  EXPECT_THROW(bad.validate(7), PrecisionExhausted);
  bad = x1;
  bad.M = 10;
  EXPECT_THROW(bad.validate(7), std::invalid_argument);
}

TEST(Gamma, ValuationResidueAndEquation) {
  for (int p : {3, 5, 7}) {
    const auto policy = small_policy(p, 8, 2);
    const auto ring = MixedRing::create(p, policy.N, 1);
    const auto gamma = compute_gamma(ring, policy);
    EXPECT_EQ(ring->valuation(gamma).value, 1);
    EXPECT_TRUE(ring->valuation(gamma).exact);
    // gamma = zeta - 1 modulo pi^2.
    const auto diff = gamma - (ring->zeta_power(1) - ring->one());
    EXPECT_GE(ring->valuation(diff).value, 2) << p;
    // gamma^p/p = -gamma + higher order terms.
    const auto lambda = artin_hasse_coeffs(gamma, policy);
    EXPECT_EQ(ring->valuation(ring->pow(gamma, static_cast<std::uint64_t>(p))).value,
              ring->valuation(ring->scale(gamma, p)).value);
    EXPECT_EQ(lambda[0], ring->one());
  }
}

TEST(Gamma, ResidualOfLogSeries) {
  const int p = 5;
  const auto policy = small_policy(p, 6, 2);
  // Evaluate the truncated series in a ring with J extra digits so that the
  // divisions by p^j are exact, then compare mod p^N.
  const auto wide = MixedRing::create(p, policy.N + policy.J, 1);
  const auto gamma_wide = compute_gamma(wide, PrecisionPolicy{policy.N + policy.J, 2, 2 * p,
                                                              minimal_artin_hasse_level(p, policy.N + policy.J)});
  MixedElement acc = gamma_wide;
  MixedElement power = gamma_wide;
  BigInt pj = 1;
  for (int j = 1; j <= policy.J; ++j) {
    power = wide->pow(power, p);
    pj *= p;
    std::vector<BigInt> c = power.coefficients();
    for (auto& v : c) {
      ASSERT_EQ(v % pj, 0);
      v /= pj;
    }
    acc = acc + wide->make(std::move(c));
  }
  EXPECT_GE(wide->valuation(acc).value, (p - 1) * policy.N);
}

TEST(ArtinHasse, SeriesAndValuations) {
  const auto e = artin_hasse_series(5, 8);
  EXPECT_EQ(e[0], 1);
  EXPECT_EQ(e[1], 1);
  EXPECT_EQ(e[2], Rational(1, 2));
  EXPECT_EQ(e[4], Rational(1, 24));
  EXPECT_EQ(e[5], Rational(1, 120) + Rational(1, 5));
  for (int p : {3, 5, 7}) {
    const auto policy = small_policy(p, 10, 8);
    const auto ring = MixedRing::create(p, policy.N, 1);
    const auto gamma = compute_gamma(ring, policy);
    const auto lambda = artin_hasse_coeffs(gamma, policy);
    ASSERT_EQ(static_cast<int>(lambda.size()), policy.M + 1);
    EXPECT_EQ(lambda[1], gamma);
    for (int m = 0; m <= policy.M; ++m) {
      const auto v = ring->valuation(lambda[static_cast<std::size_t>(m)]);
      EXPECT_TRUE(!v.exact || v.value >= m) << "p=" << p << " m=" << m;
      if (m <= p - 1) {
        EXPECT_TRUE(v.exact);
        EXPECT_EQ(v.value, m);
        BigInt fact = 1;
        for (int t = 2; t <= m; ++t) fact *= t;
        EXPECT_EQ(ring->scale(lambda[static_cast<std::size_t>(m)], fact), ring->pow(gamma, m));
      }
    }
  }
}

TEST(Teichmuller, FixedByQPower) {
  for (auto [p, m] : {std::pair{5, 1}, std::pair{5, 2}, std::pair{3, 3}}) {
    const auto ring = MixedRing::create(p, 6, m);
    const GaloisField f(p, m);
    const auto q = static_cast<std::uint64_t>(f.size());
    EXPECT_EQ(teichmuller_lift(ring, f, 0), ring->zero());
    EXPECT_EQ(teichmuller_lift(ring, f, 1), ring->one());
    for (std::uint64_t code = 0; code < f.size(); ++code) {
      const auto c = f.element(code);
      const auto lift = teichmuller_lift(ring, f, c);
      EXPECT_EQ(ring->pow(lift, q), lift);
      EXPECT_EQ(ring->residue(lift), f.coordinates(c));
    }
  }
  const auto ring = MixedRing::create(5, 6, 1);
  EXPECT_THROW(teichmuller_lift(ring, GaloisField(5, 2), 7), std::invalid_argument);
}

TEST(Teichmuller, FrobeniusActsOnLifts) {
  const int p = 7, m = 2;
  const auto ring = MixedRing::create(p, 6, m);
  const GaloisField f(p, m);
  for (std::uint64_t code = 0; code < f.size(); code += 5) {
    const auto c = f.element(code);
    EXPECT_EQ(ring->frobenius(teichmuller_lift(ring, f, c), 1), teichmuller_lift(ring, f, f.frobenius(c)));
    EXPECT_EQ(ring->frobenius(teichmuller_lift(ring, f, c), -1),
              teichmuller_lift(ring, f, f.pow(c, static_cast<std::uint64_t>(p))));
  }
}

TEST(GCoefficients, SingleTermAndBounds) {
  const int p = 5;
  const auto policy = small_policy(p, 8, 6);
  const auto ring = MixedRing::create(p, policy.N, 1);
  const auto lambda = artin_hasse_coeffs(compute_gamma(ring, policy), policy);
  const auto single = g_coefficients({{3, ring->one()}}, lambda, policy);
  for (int n = 0; n <= policy.M; ++n) {
    const auto expected = n % 3 == 0 ? lambda[static_cast<std::size_t>(n / 3)] : ring->zero();
    EXPECT_EQ(single[static_cast<std::size_t>(n)], expected) << n;
  }
  const GaloisField f(p, 1);
  std::map<int, MixedElement> lifted{{7, ring->one()}, {1, teichmuller_lift(ring, f, 3)}};
  const auto g = g_coefficients(lifted, lambda, policy);
  EXPECT_EQ(g[0], ring->one());
  for (int n = 0; n <= policy.M; ++n) {
    const auto v = ring->valuation(g[static_cast<std::size_t>(n)]);
    const auto w = min_weight(n, kX2);
    if (v.exact) {
      EXPECT_GE(ExtendedRational(Rational(v.value, p - 1)), w / Rational(p - 1)) << n;
    }
  }
}

TEST(Matrices, FOneIsF) {
  const int p = 5;
  const auto policy = small_policy(p, 6, 4);
  const auto ring = MixedRing::create(p, policy.N, 2);
  const auto lambda = artin_hasse_coeffs(compute_gamma(ring, policy), policy);
  const GaloisField f(p, 2);
  const auto g = g_coefficients({{7, ring->one()}, {1, teichmuller_lift(ring, f, 7)}}, lambda, policy);
  const auto big_f = build_F(g, policy);
  const auto f1 = product_Fa(big_f, 1);
  for (std::size_t i = 0; i < big_f.size(); ++i) {
    for (std::size_t j = 0; j < big_f.size(); ++j) EXPECT_EQ(f1(i, j), big_f(i, j));
  }
  // The twisted power equals the ordered product F F^{tau^-1} ... written out.
  for (int a : {2, 3, 4}) {
    DworkMatrix expected = big_f;
    for (int t = 1; t < a; ++t) expected = expected * twist(big_f, -t);
    const auto got = product_Fa(big_f, a);
    for (std::size_t i = 0; i < big_f.size(); ++i) {
      for (std::size_t j = 0; j < big_f.size(); ++j) EXPECT_EQ(got(i, j), expected(i, j)) << a;
    }
  }
  EXPECT_THROW(product_Fa(big_f, 0), std::invalid_argument);
}

TEST(MinorSums, RequiresCertificate) {
  const auto ring = MixedRing::create(7, 4, 1);
  DworkMatrix m(12, ring->zero());
  EXPECT_THROW(minor_sums(m, 7, 4, 5, std::nullopt), TailBoundUnavailable);
  const auto policy = PrecisionPolicy::defaults(7, 4, 5, 12);
  FqPolynomial f{{{5, 1}, {2, 1}}};
  EXPECT_THROW(run_dwork(field(7, 1), f, 4, policy, std::nullopt), TailBoundUnavailable);
}

TEST(MinorSums, OneByOne) {
  const auto ring = MixedRing::create(7, 4, 1);
  DworkMatrix m(1, ring->from_integer(49));
  const auto sums = minor_sums(m, 7, 1, 2, certify(kX1, kX1Params), Rational(1));
  EXPECT_EQ(sums.entries[0].value, ring->one());
  EXPECT_EQ(sums.entries[1].value, ring->from_integer(-49));
  EXPECT_EQ(sums.entries[1].ord_q, ExtendedRational(2));
}

TEST(Engine, X1AgreesWithOracle) {
  const auto cert = certify(kX1, kX1Params);
  const auto policy = PrecisionPolicy::defaults(7, 4, 5, 12);
  const FqPolynomial f{{{5, 1}, {2, 1}}};
  const auto report = run_dwork(field(7, 1), f, 4, policy, cert);
  EXPECT_EQ(report.ring_degree, 1);
  const auto oracle = base_change(l_polynomial(field(7, 1), f), 4);
  for (int n = 0; n < 5; ++n) {
    const auto& e = report.sums.entries[static_cast<std::size_t>(n)];
    EXPECT_TRUE(e.resolved) << n;
    EXPECT_EQ(e.ord_q, oracle.valuations[static_cast<std::size_t>(n)]) << n;
  }
  EXPECT_EQ(report.polygon.polygon, np_of_l(oracle));
  EXPECT_TRUE(report.certified_polygon);
  ASSERT_TRUE(report.entry_check.has_value());
  EXPECT_TRUE(report.entry_check->all_exceed);
  EXPECT_EQ(report.entry_check->min_margin, Rational(1, 12));
  EXPECT_GT(report.sums.entries[1].ord_q, ExtendedRational(Rational(5, 12)));
  EXPECT_GT(report.sums.entries[2].ord_q, ExtendedRational(Rational(5, 6)));
  // ord_pi(lambda_m) >= m, or the reading is saturated at working precision.
  for (std::size_t m = 0; m < report.lambda_valuations.size(); ++m) {
    const auto& v = report.lambda_valuations[m];
    EXPECT_TRUE(!v.exact || v.value >= static_cast<std::int64_t>(m)) << "m=" << m;
  }
}

TEST(Engine, X1ExtensionRingMatches) {
  // Coefficient outside F_7 forces the degree-2 unramified ring.
  const auto f49 = field(7, 2);
  const FqPolynomial f{{{5, 1}, {2, 10}}};
  auto policy = PrecisionPolicy::defaults(7, 2, 5, 12);
  const auto report = run_dwork(f49, f, 2, policy, certify(kX1, kX1Params));
  EXPECT_EQ(report.ring_degree, 2);
  EXPECT_FALSE(report.entry_check.has_value());
  const auto oracle = l_polynomial(f49, f);
  EXPECT_EQ(report.polygon.polygon, np_of_l(oracle));
  for (int n = 0; n < 5; ++n) {
    EXPECT_EQ(report.sums.entries[static_cast<std::size_t>(n)].ord_q, oracle.valuations[static_cast<std::size_t>(n)]);
  }
}

TEST(Engine, X2AgreesWithOracle) {
  const auto cert = certify(kX2, kX2Params);
  const FqPolynomial f{{{7, 1}, {1, 1}}};
  const auto oracle = base_change(l_polynomial(field(5, 1), f), 8);
  const auto report = run_dwork(field(5, 1), f, 8, PrecisionPolicy::defaults(5, 8, 7, 27), cert);
  EXPECT_EQ(report.polygon.polygon, np_of_l(oracle));
  for (int n = 0; n < 7; ++n) {
    EXPECT_EQ(report.sums.entries[static_cast<std::size_t>(n)].ord_q, oracle.valuations[static_cast<std::size_t>(n)]);
  }
  EXPECT_TRUE(report.entry_check->all_exceed);
  EXPECT_EQ(report.entry_check->min_margin, Rational(7, 24));
  // At L = 54 the truncation bound covers C_0..C_2 only.
  const std::vector<bool> unresolved = {false, false, false, true, true, true, true};
  EXPECT_EQ(report.polygon.unresolved, unresolved);
}

TEST(Engine, Deterministic) {
  const auto cert = certify(kX1, kX1Params);
  const FqPolynomial f{{{5, 1}, {2, 3}}};
  const auto policy = small_policy(7, 12, 12);
  const auto a = run_dwork(field(7, 1), f, 4, policy, cert);
  const auto b = run_dwork(field(7, 1), f, 4, policy, cert);
  for (int n = 0; n < 5; ++n) {
    EXPECT_EQ(a.sums.entries[static_cast<std::size_t>(n)].value, b.sums.entries[static_cast<std::size_t>(n)].value);
  }
}

TEST(Engine, JsonReport) {
  const auto report = run_dwork(field(7, 1), FqPolynomial{{{5, 1}, {2, 1}}}, 4, PrecisionPolicy::defaults(7, 4, 5, 12),
                                certify(kX1, kX1Params));
  const nlohmann::json j = report;
  EXPECT_EQ(j["minors"].size(), 5u);
  EXPECT_EQ(j["minors"][1]["ord_q"], "1/2");
  EXPECT_EQ(j["policy"]["N"], 20);
  EXPECT_EQ(j["entry_ord_p"].size(), 24u);
  EXPECT_TRUE(j["certified_polygon"].get<bool>());
}

}  // namespace
}  // namespace dworkbench
