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

#include <random>

#include "dworkbench/tropical_certifier.hpp"

namespace dworkbench {
namespace {

const SupportPattern kX1(7, {2, 5});
const SupportPattern kX2(5, {1, 7});
const CertificateParams kX1Params{Rational(5, 12), 12, 12, 4};
const CertificateParams kX2Params{Rational(5, 12), 8, 27, 8};

ExtendedRational R(std::int64_t n, std::int64_t d = 1) { return ExtendedRational(Rational(n, d)); }

TEST(ShiftedMatrix, X1BlockEntries) {
  const auto d = build_shifted_matrix(kX1, kX1Params);
  EXPECT_EQ(d.block(1, 2), R(-1, 6));
  for (int i = 1; i <= 12; ++i) {
    for (int j = 1; j <= 12; ++j) {
      if (i == 1 && j == 2) continue;
      EXPECT_GE(d.block(i, j), R(1, 12)) << i << "," << j;
    }
  }
  EXPECT_TRUE(d.block(1, 8).is_infinite());
}

TEST(ShiftedMatrix, X2OnlyTwoNegativeEntries) {
  const auto d = build_shifted_matrix(kX2, kX2Params);
  EXPECT_EQ(d.block(3, 1), R(-1, 6));
  EXPECT_EQ(d.block(2, 3), R(-1, 24));
  int negative = 0;
  for (int i = 1; i <= 27; ++i) {
    for (int j = 1; j <= 27; ++j) negative += d.block(i, j) < R(0);
  }
  EXPECT_EQ(negative, 2);
}

TEST(TailFloor, FloorsAtLeastQuotedValues) {
  const auto f1 = tail_floor(kX1, kX1Params);
  EXPECT_GE(f1.mixed, R(3, 6));
  EXPECT_GE(f1.outer, R(3, 6));
  const auto f2 = tail_floor(kX2, kX2Params);
  EXPECT_GE(f2.mixed, R(7, 6));
  EXPECT_GE(f2.outer, R(7, 6));
}

TEST(TailFloor, SignConditions) {
  EXPECT_EQ(7 * linear_floor(kX1) - Rational(1, 12), Rational(3, 20));
  EXPECT_THROW(tail_floor(kX1, {Rational(5, 12), 1, 12, 4}), SignConditionFailed);
  EXPECT_THROW(tail_floor(kX1, {Rational(5, 12), 31, 12, 4}), SignConditionFailed);
}

TEST(TailFloor, FloorsBoundExactEntriesFarOut) {
  for (const auto& [pat, params] : {std::pair{kX1, kX1Params}, std::pair{kX2, kX2Params}}) {
    const auto f = tail_floor(pat, params);
    const int ell = params.ell;
    for (int i = 1; i <= 8 * ell; ++i) {
      for (int j = 1; j <= 8 * ell; ++j) {
        const bool in_i = i <= ell, in_j = j <= ell;
        if (in_i && in_j) continue;
        const auto v = detail::shifted_entry(i, j, pat, params);
        EXPECT_GE(v, (in_i || in_j) ? f.mixed : f.outer) << i << "," << j;
      }
    }
  }
}

// Zone summaries of each squaring, frozen from a run of the certifier and
// checked against the quoted inequalities.
TEST(Certify, X1Transcript) {
  const auto cert = certify(kX1, kX1Params);
  ASSERT_EQ(cert.transcript.size(), 3u);
  const auto& sq1 = cert.transcript[1];
  const auto& sq2 = cert.transcript[2];
  EXPECT_EQ(sq1.stage, "D^{*2}");
  EXPECT_GE(sq1.block_min, R(-2, 6));
  EXPECT_GT(sq1.mixed_floor, R(2, 6));
  EXPECT_GT(sq1.outer_floor, R(6, 6));
  EXPECT_GE(sq2.block_min, R(-4, 6));
  EXPECT_GT(sq2.mixed_floor, R(0));
  EXPECT_GT(sq2.outer_floor, R(4, 6));

  const std::vector<std::array<ExtendedRational, 3>> expected = {
      {R(-1, 6), R(7, 12), R(7, 3)}, {R(-1, 12), R(5, 12), R(7, 6)}, {R(1, 12), R(1, 3), R(5, 6)}};
  for (std::size_t t = 0; t < expected.size(); ++t) {
    EXPECT_EQ(cert.transcript[t].block_min, expected[t][0]) << t;
    EXPECT_EQ(cert.transcript[t].mixed_floor, expected[t][1]) << t;
    EXPECT_EQ(cert.transcript[t].outer_floor, expected[t][2]) << t;
  }
  EXPECT_EQ(cert.delta, R(1, 12));
}

TEST(Certify, X2Transcript) {
  const auto cert = certify(kX2, kX2Params);
  const std::vector<std::array<ExtendedRational, 3>> expected = {{R(-1, 6), R(4, 3), R(43, 12)},
                                                                 {R(-5, 24), R(7, 6), R(8, 3)},
                                                                 {R(-1, 24), R(23, 24), R(7, 3)},
                                                                 {R(7, 24), R(11, 12), R(23, 12)}};
  ASSERT_EQ(cert.transcript.size(), expected.size());
  for (std::size_t t = 0; t < expected.size(); ++t) {
    EXPECT_EQ(cert.transcript[t].block_min, expected[t][0]) << t;
    EXPECT_EQ(cert.transcript[t].mixed_floor, expected[t][1]) << t;
    EXPECT_EQ(cert.transcript[t].outer_floor, expected[t][2]) << t;
  }
  EXPECT_EQ(cert.delta, R(7, 24));
}

TEST(Certify, X1TwoFactorsFails) {
  try {
    certify(kX1, {Rational(5, 12), 12, 12, 2});
    FAIL() << "expected CertificateFailed";
  } catch (const CertificateFailed& e) {
    EXPECT_EQ(e.failures.size(), 3u);
    for (const auto& f : e.failures) EXPECT_NE(f.find("=-1/12"), std::string::npos) << f;
  }
}

TEST(Certify, AbsurdSigmaFails) {
  EXPECT_THROW(certify(kX1, {Rational(10), 12, 12, 4}), CertificateFailed);
}

TEST(Params, Validation) {
  EXPECT_THROW(certify(kX1, {Rational(5, 12), 12, 12, 3}), std::invalid_argument);
  EXPECT_THROW(certify(kX1, {Rational(0), 12, 12, 4}), std::invalid_argument);
  EXPECT_THROW(certify(kX1, {Rational(5, 12), 12, 0, 4}), std::invalid_argument);
  EXPECT_EQ((CertificateParams{Rational(1), 1, 1, 8}.squarings()), 3);
}

TEST(TailExcess, PositiveAndMonotone) {
  const auto cert = certify(kX1, kX1Params);
  const Rational e12 = tail_excess(cert, 12);
  EXPECT_EQ(ExtendedRational(e12), min(cert.final_matrix.mixed_floor(), cert.final_matrix.outer_floor()));
  EXPECT_EQ(e12, Rational(1, 3));
  Rational prev = e12;
  for (int L : {16, 24, 32, 48}) {
    const Rational e = tail_excess(cert, L);
    EXPECT_GE(e, prev) << L;
    prev = e;
  }
  EXPECT_EQ(tail_excess(cert, 24), Rational(4, 3));
  EXPECT_THROW(tail_excess(cert, 11), std::invalid_argument);
}

TEST(StarProduct, IdentityIsNeutral) {
  const auto d = build_shifted_matrix(kX1, kX1Params);
  const auto id = ZonedBoundMatrix::identity(12, d.denominator());
  const auto left = star_product(id, d);
  const auto right = star_product(d, id);
  for (int i = 1; i <= 12; ++i) {
    for (int j = 1; j <= 12; ++j) {
      EXPECT_EQ(left.block(i, j), d.block(i, j));
      EXPECT_EQ(right.block(i, j), d.block(i, j));
    }
  }
}

TEST(StarProduct, AssociativeOnBlock) {
  const auto d = build_shifted_matrix(kX1, kX1Params);
  const auto d2 = star_product(d, d);
  const auto a = star_product(d2, d);
  const auto b = star_product(d, d2);
  for (int i = 1; i <= 12; ++i) {
    for (int j = 1; j <= 12; ++j) EXPECT_EQ(a.block(i, j), b.block(i, j));
  }
}

TEST(StarProduct, MonotoneUnderWeakening) {
  const auto d = build_shifted_matrix(kX1, kX1Params);
  auto weak = d;
  weak.set(3, 4, d.block(3, 4) - Rational(1, 2));
  weak.set_mixed_floor(d.mixed_floor() - Rational(1, 4));
  const auto strong_sq = star_product(d, d);
  const auto weak_sq = star_product(weak, weak);
  for (int i = 1; i <= 12; ++i) {
    for (int j = 1; j <= 12; ++j) EXPECT_LE(weak_sq.block(i, j), strong_sq.block(i, j));
  }
  EXPECT_LE(weak_sq.mixed_floor(), strong_sq.mixed_floor());
  EXPECT_LE(weak_sq.outer_floor(), strong_sq.outer_floor());
}

// Random integer matrices whose entries p^e u obey ord_p >= g_bound; the exact
// valuation of their product never falls below the zoned prediction.
TEST(StarProduct, SoundAgainstExactProducts) {
  struct Case {
    SupportPattern pattern;
    CertificateParams params;
  };
  const std::vector<Case> cases = {{SupportPattern(5, {1, 3}), {Rational(1, 4), 4, 3, 2}},
                                   {SupportPattern(3, {1, 2}), {Rational(1, 4), 2, 3, 4}},
                                   {SupportPattern(7, {2, 5}), {Rational(1, 6), 12, 3, 2}},
                                   {SupportPattern(5, {1, 7}), {Rational(1, 6), 8, 3, 4}}};
  std::mt19937 rng(20261016);
  constexpr int n = 8;
  for (int trial = 0; trial < 200; ++trial) {
    const Case& c = cases[static_cast<std::size_t>(trial) % cases.size()];
    const int p = c.pattern.prime();
    auto zoned = build_shifted_matrix(c.pattern, c.params);
    for (int t = 0; t < c.params.squarings(); ++t) zoned = star_product(zoned, zoned);

    std::vector<BigInt> prod;
    for (int f = 0; f < c.params.k; ++f) {
      std::vector<BigInt> m(n * n, 0);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const auto g = g_bound(i, j, c.pattern);
          if (g.is_infinite()) continue;
          const Rational v = g.value();
          BigInt e = boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v);
          if (Rational(e) < v) e += 1;
          e += rng() % 2;
          const BigInt unit = 1 + rng() % (p - 1);
          m[(i - 1) * n + (j - 1)] = ipow(BigInt(p), static_cast<unsigned>(e)) * unit * ((rng() % 2) ? 1 : -1);
        }
      }
      if (prod.empty()) {
        prod = m;
        continue;
      }
      std::vector<BigInt> next(n * n, 0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) next[i * n + j] += prod[i * n + k] * m[k * n + j];
        }
      }
      prod = std::move(next);
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const BigInt& x = prod[(i - 1) * n + (j - 1)];
        if (x == 0) continue;
        const Rational actual = p_adic_valuation(x, p);
        const ExtendedRational predicted =
            zoned.zone_value(i, j) + ExtendedRational(c.params.sigma * c.params.k + Rational(i - j, c.params.s));
        EXPECT_GE(ExtendedRational(actual), predicted) << "trial " << trial << " entry " << i << "," << j;
      }
    }
  }
}

TEST(Search, FindsWorkingParameters) {
  const auto x1 = search_parameters(kX1, Rational(5, 12), {16, 64, 16});
  ASSERT_TRUE(x1.has_value());
  EXPECT_NO_THROW(certify(kX1, *x1));
  EXPECT_EQ(x1->ell, 4);
  const auto x2 = search_parameters(kX2, Rational(5, 12), {16, 64, 16});
  ASSERT_TRUE(x2.has_value());
  EXPECT_NO_THROW(certify(kX2, *x2));
  EXPECT_EQ(x2->ell, 12);
  EXPECT_FALSE(search_parameters(kX1, Rational(10), {4, 8, 4}).has_value());
}

TEST(Json, CertificateDocument) {
  const auto cert = certify(kX1, kX1Params);
  const nlohmann::json j = cert;
  EXPECT_EQ(j["delta"], "1/12");
  EXPECT_EQ(j["transcript"].size(), 3u);
  EXPECT_EQ(j["params"]["ell"], 12);
}

}  // namespace
}  // namespace dworkbench
