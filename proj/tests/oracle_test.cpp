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

#include "dworkbench/oracle.hpp"

namespace dworkbench {
namespace {

FieldPtr field(int p, int m) { return std::make_shared<const GaloisField>(p, m); }
FqPolynomial poly(std::map<int, GaloisField::Element> terms) { return FqPolynomial{std::move(terms)}; }
std::vector<ExtendedRational> vals(std::initializer_list<Rational> v) { return {v.begin(), v.end()}; }

TEST(ExpSum, Basics) {
  const auto f7 = field(7, 1);
  EXPECT_TRUE(exp_sum(f7, poly({{1, 1}}), 1).is_zero());
  const auto s = exp_sum(field(5, 1), poly({{2, 1}}), 1);
  EXPECT_EQ(p_adic_valuation(s.norm(), 5), 2);
  EXPECT_EQ(ord_q(s, 1), ExtendedRational(Rational(1, 2)));
  EXPECT_THROW(exp_sum(f7, FqPolynomial{}, 1), std::invalid_argument);
  EXPECT_THROW(exp_sum(f7, poly({{7, 1}}), 1), std::invalid_argument);
  EXPECT_THROW(exp_sum(f7, poly({{5, 1}}), 12), FieldTooLarge);
}

TEST(LPolynomial, DegreeOneIsFirstSum) {
  const auto f = field(5, 1);
  const auto g = poly({{2, 1}});
  const auto l = l_polynomial(f, g);
  ASSERT_EQ(l.b.size(), 2u);
  EXPECT_EQ(l.b[1], exp_sum(f, g, 1));
}

TEST(LPolynomial, X1OverF7) {
  const auto l = l_polynomial(field(7, 1), poly({{5, 1}, {2, 1}}));
  EXPECT_EQ(l.mode, OracleMode::Full);
  EXPECT_TRUE(l.weil_checked);
  EXPECT_EQ(l.valuations, vals({0, Rational(1, 2), 1, Rational(3, 2), 2}));
  EXPECT_TRUE(is_half_line(np_of_l(l)));
  EXPECT_EQ(np_of_l(l).vertices().front().x, 0);
  const auto l4 = base_change(l, 4);
  EXPECT_EQ(l4.a, 4);
  EXPECT_EQ(l4.valuations, l.valuations);
}

TEST(LPolynomial, X2BaseChange) {
  const auto l = l_polynomial(field(5, 1), poly({{7, 1}, {1, 1}}));
  EXPECT_TRUE(is_supersingular(l));
  const auto l8 = base_change(l, 8);
  EXPECT_EQ(l8.valuations, vals({0, Rational(1, 2), Rational(17, 16), Rational(25, 16), Rational(33, 16),
                                 Rational(5, 2), 3}));
  EXPECT_TRUE(is_half_line(np_of_l(l8)));
}

TEST(LPolynomial, HalfModeMatchesFull) {
  // q^{d-1} = 5^6 fits the full mode; force half mode with a small cap.
  const auto f = field(5, 1);
  const auto g = poly({{7, 1}, {1, 2}});
  const auto full = l_polynomial(f, g);
  const auto half = l_polynomial(f, g, OracleOptions{5 * 5 * 5, 0});
  EXPECT_EQ(half.mode, OracleMode::Half);
  EXPECT_EQ(full.mode, OracleMode::Full);
  EXPECT_EQ(half.valuations, full.valuations);
  EXPECT_EQ(np_of_l(half), np_of_l(full));
}

TEST(LPolynomial, EndpointAndHullProperties) {
  for (auto [p, m, terms] : {std::tuple{7, 1, std::map<int, GaloisField::Element>{{5, 1}, {2, 3}}},
                             std::tuple{5, 1, std::map<int, GaloisField::Element>{{7, 1}, {1, 4}}},
                             std::tuple{3, 1, std::map<int, GaloisField::Element>{{7, 1}, {2, 1}, {1, 2}}},
                             std::tuple{5, 1, std::map<int, GaloisField::Element>{{3, 1}, {1, 1}}},
                             std::tuple{7, 1, std::map<int, GaloisField::Element>{{4, 1}, {1, 1}}}}) {
    const auto l = l_polynomial(field(p, m), poly(terms));
    const auto np = np_of_l(l);
    EXPECT_EQ(l.valuations.back(), ExtendedRational(Rational(l.d - 1, 2)));
    EXPECT_TRUE(is_symmetric(np));
    for (int n = 0; n < l.d; ++n) EXPECT_GE(l.valuations[static_cast<std::size_t>(n)], ExtendedRational(np.at(n)));
    for (const auto& v : np.vertices()) EXPECT_EQ(l.valuations[static_cast<std::size_t>(v.x)], ExtendedRational(v.y));
  }
}

TEST(LPolynomial, NotAlwaysSupersingular) {
  // y^5 - y = x^4 + x over F_5: slopes 1/4, 1/2, 1/2, 3/4.
  const auto l = l_polynomial(field(5, 1), poly({{4, 1}, {1, 1}}));
  EXPECT_FALSE(is_supersingular(l));
  EXPECT_EQ(np_of_l(l).str(), "(0,0) (1,1/4) (2,3/4) (3,3/2)");
}

TEST(PointCount, MatchesCharacterSum) {
  const auto f7 = field(7, 1);
  const auto g = poly({{5, 1}, {2, 1}});
  const std::vector<int> expected = {29, 71, 491, 2255};
  for (int k = 1; k <= 4; ++k) {
    const auto direct = curve_point_count(f7, g, k);
    EXPECT_EQ(direct, expected[static_cast<std::size_t>(k - 1)]);
    EXPECT_EQ(direct, point_count_from_sum(exp_sum(f7, g, k), 7, k));
  }
  const auto f3 = field(3, 1);
  EXPECT_EQ(curve_point_count(f3, poly({{2, 1}}), 1), point_count_from_sum(exp_sum(f3, poly({{2, 1}}), 1), 3, 1));
}

TEST(PointCount, IdentityOnSmallCurves) {
  for (auto [p, m, terms] : {std::tuple{3, 2, std::map<int, GaloisField::Element>{{7, 1}, {2, 1}}},
                             std::tuple{5, 2, std::map<int, GaloisField::Element>{{7, 1}, {1, 7}}},
                             std::tuple{7, 2, std::map<int, GaloisField::Element>{{5, 1}, {2, 10}}}}) {
    const auto f = field(p, m);
    for (int k = 1; k <= 3; ++k) {
      if (std::pow(double(f->size()), k) > 1e6) break;
      EXPECT_EQ(curve_point_count(f, poly(terms), k), point_count_from_sum(exp_sum(f, poly(terms), k), f->size(), k));
    }
  }
}

TEST(ExpSum, BasisIndependence) {
  const auto a = std::make_shared<const GaloisField>(7, 2);
  const auto b = std::make_shared<const GaloisField>(7, 2, std::vector<GaloisField::Element>{3, 1, 1});
  ASSERT_NE(a->modulus(), b->modulus());
  const auto g = poly({{5, 1}, {2, 3}});
  for (int k = 1; k <= 2; ++k) EXPECT_EQ(exp_sum(a, g, k), exp_sum(b, g, k));
}

TEST(GaloisStability, CurveNumeratorIsRational) {
  const auto l = l_polynomial(field(7, 1), poly({{5, 1}, {2, 1}}));
  // prod_j sigma_j(L(T)) as polynomials over Z[zeta].
  std::vector<CyclotomicInteger> prod{CyclotomicInteger::integer(7, 1)};
  for (int j = 1; j < 7; ++j) {
    std::vector<CyclotomicInteger> next(prod.size() + l.b.size() - 1, CyclotomicInteger(7));
    for (std::size_t u = 0; u < prod.size(); ++u) {
      for (std::size_t v = 0; v < l.b.size(); ++v) next[u + v] += prod[u] * l.b[v].galois(j);
    }
    prod = std::move(next);
  }
  ASSERT_EQ(prod.size(), 25u);
  for (const auto& c : prod) {
    for (std::size_t i = 1; i < c.coefficients().size(); ++i) EXPECT_EQ(c.coefficients()[i], 0);
  }
  EXPECT_EQ(prod.back().coefficients()[0], boost::multiprecision::pow(BigInt(7), 12));
}

TEST(Sweep, FamiliesAreSupersingular) {
  struct Case {
    int p, m;
    std::map<int, GaloisField::Element> fixed;
    std::vector<int> free;
    std::size_t members;
  };
  for (const auto& c : {Case{7, 1, {{5, 1}}, {2}, 7}, Case{5, 1, {{7, 1}}, {1}, 5}, Case{3, 1, {{7, 1}}, {2, 1}, 9},
                        Case{3, 2, {{7, 1}}, {2, 1}, 81}}) {
    const auto sweep = sweep_family(field(c.p, c.m), PolynomialFamily{poly(c.fixed), c.free});
    ASSERT_EQ(sweep.size(), c.members);
    for (const auto& e : sweep) EXPECT_TRUE(e.supersingular) << c.p << "^" << c.m;
  }
}

TEST(Sweep, MatchesSingleCurveOracle) {
  const auto f = field(7, 1);
  const auto sweep = sweep_family(f, PolynomialFamily{poly({{5, 1}}), {2}});
  for (const auto& e : sweep) {
    auto g = poly({{5, 1}});
    if (e.params[0] != 0) g.terms[2] = e.params[0];
    EXPECT_EQ(e.l.valuations, l_polynomial(f, g).valuations);
  }
}

TEST(Json, LPolynomialReport) {
  const auto l = l_polynomial(field(7, 1), poly({{5, 1}, {2, 1}}));
  const nlohmann::json j = l;
  EXPECT_EQ(j["valuations"].size(), 5u);
  EXPECT_EQ(j["valuations"][1], "1/2");
}

}  // namespace
}  // namespace dworkbench
