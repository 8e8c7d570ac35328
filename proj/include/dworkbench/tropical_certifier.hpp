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

// Min-plus certificates for products of Dwork-type matrices.
//
// Write D_ij = g_ij - sigma - (i - j)/s for the shifted entrywise bound of a
// single factor. If every factor M_t satisfies ord_p (M_t)_ij >= g_ij then
//
//   ord_p (M_1 ... M_k)_ij - (k*sigma + (i - j)/s) >= (D * ... * D)_ij
//
// where * is the min-plus product (the (i - j)/s drift telescopes along any
// path). The infinite matrix D is tracked in three zones: an exact ell x ell
// block, a "mixed" floor for entries with exactly one index beyond ell and an
// "outer" floor for entries with both indices beyond ell. Repeated squaring of
// that zoned object gives D^{*k}; if it is strictly positive everywhere the
// bound holds for every product whose length is a multiple of k.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dworkbench/core.hpp"
#include "dworkbench/parallel.hpp"
#include "dworkbench/valuation_bounds.hpp"

namespace dworkbench {

struct CertificateParams {
  Rational sigma;      // per-factor slope gain
  std::int64_t s = 1;  // drift denominator
  int ell = 1;         // exact block size
  int k = 2;           // number of factors, a power of two

  void validate() const {
    if (sigma <= 0) throw std::invalid_argument("certificate params: sigma must be positive");
    if (s < 1) throw std::invalid_argument("certificate params: s must be >= 1");
    if (ell < 1) throw std::invalid_argument("certificate params: ell must be >= 1");
    if (k != 2 && k != 4 && k != 8 && k != 16 && k != 32) {
      throw std::invalid_argument("certificate params: k must be one of 2, 4, 8, 16, 32");
    }
  }

  int squarings() const {
    int n = 0;
    for (int v = k; v > 1; v >>= 1) ++n;
    return n;
  }
};

/// Exact ell x ell block plus two zone floors. Values are stored as integer
/// numerators over one shared denominator; every entry of the matrices built
/// here lives on the grid 1/lcm(p-1, den(sigma), s), so nothing is rounded.
class ZonedBoundMatrix {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

  ZonedBoundMatrix(int ell, std::int64_t denominator)
      : ell_(ell), denominator_(denominator), block_(static_cast<std::size_t>(ell) * ell, kInfinity) {
    if (ell < 1 || denominator < 1) throw std::invalid_argument("ZonedBoundMatrix: bad shape");
  }

  /// Min-plus identity: 0 on the diagonal, +inf elsewhere, both floors +inf.
  static ZonedBoundMatrix identity(int ell, std::int64_t denominator = 1) {
    ZonedBoundMatrix m(ell, denominator);
    for (int i = 1; i <= ell; ++i) m.raw(i, i) = 0;
    return m;
  }

  int ell() const { return ell_; }
  std::int64_t denominator() const { return denominator_; }

  // 1-based, matching the D_ij indexing.
  std::int64_t& raw(int i, int j) { return block_[index(i, j)]; }
  std::int64_t raw(int i, int j) const { return block_[index(i, j)]; }
  std::int64_t& raw_mixed() { return mixed_; }
  std::int64_t& raw_outer() { return outer_; }
  std::int64_t raw_mixed() const { return mixed_; }
  std::int64_t raw_outer() const { return outer_; }

  ExtendedRational block(int i, int j) const { return to_extended(raw(i, j)); }
  ExtendedRational mixed_floor() const { return to_extended(mixed_); }
  ExtendedRational outer_floor() const { return to_extended(outer_); }

  /// Bound that applies to entry (i, j) of the represented infinite matrix.
  ExtendedRational zone_value(std::int64_t i, std::int64_t j) const {
    if (i < 1 || j < 1) throw std::invalid_argument("zone_value: indices are 1-based");
    const bool in_i = i <= ell_, in_j = j <= ell_;
    if (in_i && in_j) return block(static_cast<int>(i), static_cast<int>(j));
    if (in_i || in_j) return mixed_floor();
    return outer_floor();
  }

  std::int64_t raw_block_min() const {
    std::int64_t m = kInfinity;
    for (std::int64_t v : block_) m = std::min(m, v);
    return m;
  }
  ExtendedRational block_min() const { return to_extended(raw_block_min()); }

  void set(int i, int j, const ExtendedRational& v) { raw(i, j) = to_raw(v); }
  void set_mixed_floor(const ExtendedRational& v) { mixed_ = to_raw(v); }
  void set_outer_floor(const ExtendedRational& v) { outer_ = to_raw(v); }

  ZonedBoundMatrix rescaled(std::int64_t denominator) const {
    if (denominator % denominator_ != 0) throw std::invalid_argument("rescaled: denominator must be a multiple");
    const std::int64_t f = denominator / denominator_;
    ZonedBoundMatrix out(ell_, denominator);
    auto scale = [f](std::int64_t v) { return v >= kInfinity ? kInfinity : v * f; };
    for (std::size_t t = 0; t < block_.size(); ++t) out.block_[t] = scale(block_[t]);
    out.mixed_ = scale(mixed_);
    out.outer_ = scale(outer_);
    return out;
  }

  static std::int64_t add(std::int64_t a, std::int64_t b) {
    if (a >= kInfinity || b >= kInfinity) return kInfinity;
    const std::int64_t s = a + b;
    if (s >= kInfinity || s <= -kInfinity) throw std::overflow_error("ZonedBoundMatrix: value overflow");
    return s;
  }

  ExtendedRational to_extended(std::int64_t v) const {
    if (v >= kInfinity) return ExtendedRational::infinity();
    return ExtendedRational(Rational(v, denominator_));
  }

  std::int64_t to_raw(const ExtendedRational& v) const {
    if (v.is_infinite()) return kInfinity;
    const Rational scaled = v.value() * denominator_;
    if (boost::multiprecision::denominator(scaled) != 1) {
      throw std::invalid_argument("ZonedBoundMatrix: value " + v.str() + " is off the grid 1/" +
                                  std::to_string(denominator_));
    }
    const BigInt n = boost::multiprecision::numerator(scaled);
    if (n >= kInfinity || n <= -kInfinity) throw std::overflow_error("ZonedBoundMatrix: value overflow");
    return static_cast<std::int64_t>(n);
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 1 || j < 1 || i > ell_ || j > ell_) throw std::out_of_range("ZonedBoundMatrix index");
    return static_cast<std::size_t>(i - 1) * ell_ + (j - 1);
  }

  int ell_;
  std::int64_t denominator_;
  std::vector<std::int64_t> block_;
  std::int64_t mixed_ = kInfinity;
  std::int64_t outer_ = kInfinity;
};

struct TailFloors {
  ExtendedRational mixed;
  ExtendedRational outer;
};

struct ZoneSummary {
  std::string stage;
  ExtendedRational block_min;
  ExtendedRational mixed_floor;
  ExtendedRational outer_floor;
};

struct Certificate {
  SupportPattern pattern;
  CertificateParams params;
  ZonedBoundMatrix final_matrix;
  ExtendedRational delta;
  std::vector<ZoneSummary> transcript;
};

struct CertificateFailed : std::runtime_error {
  CertificateFailed(Certificate attempt_in, std::vector<std::string> failures_in)
      : std::runtime_error(describe(failures_in)),
        attempt(std::move(attempt_in)),
        failures(std::move(failures_in)) {}

  Certificate attempt;
  std::vector<std::string> failures;

 private:
  static std::string describe(const std::vector<std::string>& failures) {
    std::string msg = "certificate failed: " + std::to_string(failures.size()) + " nonpositive item(s)";
    for (std::size_t t = 0; t < failures.size() && t < 8; ++t) msg += (t ? ", " : ": ") + failures[t];
    return msg;
  }
};

namespace detail {

inline std::int64_t certificate_denominator(const SupportPattern& pattern, const CertificateParams& params) {
  const auto sigma_den = boost::multiprecision::denominator(params.sigma);
  if (sigma_den > 1'000'000) throw std::invalid_argument("certificate params: sigma denominator too large");
  std::int64_t den = std::lcm<std::int64_t>(pattern.prime() - 1, params.s);
  den = std::lcm<std::int64_t>(den, static_cast<std::int64_t>(sigma_den));
  if (pattern.bound_offset() != 0) {
    den = std::lcm<std::int64_t>(den, static_cast<std::int64_t>(boost::multiprecision::denominator(pattern.bound_offset())));
  }
  return den;
}

/// Exact shifted entry D_ij = g_ij - sigma - (i - j)/s.
inline ExtendedRational shifted_entry(std::int64_t i, std::int64_t j, const SupportPattern& pattern,
                                      const CertificateParams& params) {
  return g_bound(i, j, pattern) - (params.sigma + Rational(i - j, params.s));
}

}  // namespace detail

/// Zone floors for the entries of D outside the ell x ell block.
///
/// On p*i >= j, D_ij >= LB(i, j) = c_lin (p i - j) - sigma - (i - j)/s, which
/// is nondecreasing in both indices once p c_lin >= 1/s and 1/s >= c_lin. The
/// floors take exact D values on a band of `band_width` rows/columns beyond
/// the block and the linear bound on the lower-left corners of what remains.
inline TailFloors tail_floor(const SupportPattern& pattern, const CertificateParams& params,
                             std::optional<int> band_width = std::nullopt) {
  params.validate();
  const int p = pattern.prime();
  const Rational c_lin = linear_floor(pattern);
  const Rational di = p * c_lin - Rational(1, params.s);
  const Rational dj = Rational(1, params.s) - c_lin;
  if (di < 0 || dj < 0) {
    throw SignConditionFailed("tail_floor: monotonicity fails (dLB/di = " + to_string(di) +
                              ", dLB/dj = " + to_string(dj) + ") for s = " + std::to_string(params.s));
  }
  const std::int64_t ell = params.ell;
  const std::int64_t band = band_width.value_or(2 * params.ell);
  if (band < 0) throw std::invalid_argument("tail_floor: negative band width");
  const std::int64_t edge = ell + band;  // last index with exact values

  auto linear = [&](std::int64_t i, std::int64_t j) -> ExtendedRational {
    if (p * i < j) return ExtendedRational::infinity();
    return ExtendedRational(c_lin * (p * i - j) - params.sigma - Rational(i - j, params.s) +
                            pattern.bound_offset());
  };
  auto exact = [&](std::int64_t i, std::int64_t j) { return detail::shifted_entry(i, j, pattern, params); };

  ExtendedRational mixed = ExtendedRational::infinity();
  ExtendedRational outer = ExtendedRational::infinity();

  // Rows beyond the block, columns inside.
  for (std::int64_t i = ell + 1; i <= edge; ++i) {
    for (std::int64_t j = 1; j <= ell; ++j) mixed = min(mixed, exact(i, j));
  }
  mixed = min(mixed, linear(edge + 1, 1));
  // Columns beyond the block, rows inside. Entries with p*i < j vanish.
  for (std::int64_t j = ell + 1; j <= edge; ++j) {
    for (std::int64_t i = std::max<std::int64_t>(1, div_ceil(j, p)); i <= ell; ++i) {
      mixed = min(mixed, exact(i, j));
    }
  }
  if (const std::int64_t i0 = std::max<std::int64_t>(1, div_ceil(edge + 1, p)); i0 <= ell) {
    mixed = min(mixed, linear(i0, edge + 1));
  }
  // Both indices beyond the block.
  for (std::int64_t i = ell + 1; i <= edge; ++i) {
    for (std::int64_t j = ell + 1; j <= edge; ++j) outer = min(outer, exact(i, j));
  }
  outer = min(outer, linear(edge + 1, ell + 1));
  outer = min(outer, linear(std::max<std::int64_t>(ell + 1, div_ceil(edge + 1, p)), edge + 1));
  return {mixed, outer};
}

inline ZonedBoundMatrix build_shifted_matrix(const SupportPattern& pattern, const CertificateParams& params,
                                             std::optional<int> band_width = std::nullopt) {
  params.validate();
  const TailFloors floors = tail_floor(pattern, params, band_width);
  ZonedBoundMatrix d(params.ell, detail::certificate_denominator(pattern, params));
  for (int i = 1; i <= params.ell; ++i) {
    for (int j = 1; j <= params.ell; ++j) d.set(i, j, detail::shifted_entry(i, j, pattern, params));
  }
  d.set_mixed_floor(floors.mixed);
  d.set_outer_floor(floors.outer);
  return d;
}

/// Zoned min-plus product. Block terms with k > ell are covered by the mixed
/// floors of both factors; the floors combine every zone pairing a path from
/// the corresponding zone can take.
inline ZonedBoundMatrix star_product(const ZonedBoundMatrix& a_in, const ZonedBoundMatrix& b_in) {
  if (a_in.ell() != b_in.ell()) throw std::invalid_argument("star_product: block sizes differ");
  const std::int64_t den = std::lcm(a_in.denominator(), b_in.denominator());
  const ZonedBoundMatrix a = a_in.denominator() == den ? a_in : a_in.rescaled(den);
  const ZonedBoundMatrix b = b_in.denominator() == den ? b_in : b_in.rescaled(den);
  using M = ZonedBoundMatrix;
  const int ell = a.ell();
  M out(ell, den);
  const std::int64_t through_tail = M::add(a.raw_mixed(), b.raw_mixed());
  parallel_for(1, static_cast<std::size_t>(ell) + 1, [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 1; j <= ell; ++j) {
      std::int64_t best = through_tail;
      for (int k = 1; k <= ell; ++k) best = std::min(best, M::add(a.raw(i, k), b.raw(k, j)));
      out.raw(i, j) = best;
    }
  });
  const std::int64_t a_min = a.raw_block_min(), b_min = b.raw_block_min();
  out.raw_mixed() = std::min({M::add(a_min, b.raw_mixed()), M::add(a.raw_mixed(), b_min),
                              M::add(a.raw_mixed(), b.raw_outer()), M::add(a.raw_outer(), b.raw_mixed())});
  out.raw_outer() = std::min({M::add(a.raw_mixed(), b.raw_mixed()), M::add(a.raw_outer(), b.raw_outer()),
                              M::add(a.raw_outer(), b.raw_mixed()), M::add(a.raw_mixed(), b.raw_outer())});
  return out;
}

inline ZoneSummary summarize(const std::string& stage, const ZonedBoundMatrix& m) {
  return {stage, m.block_min(), m.mixed_floor(), m.outer_floor()};
}

namespace detail {

inline Certificate square_out(const SupportPattern& pattern, const CertificateParams& params,
                              std::optional<int> band_width) {
  ZonedBoundMatrix m = build_shifted_matrix(pattern, params, band_width);
  std::vector<ZoneSummary> transcript{summarize("D", m)};
  for (int t = 1; t <= params.squarings(); ++t) {
    m = star_product(m, m);
    transcript.push_back(summarize("D^{*" + std::to_string(1 << t) + "}", m));
  }
  const ExtendedRational delta = min(m.block_min(), min(m.mixed_floor(), m.outer_floor()));
  return Certificate{pattern, params, std::move(m), delta, std::move(transcript)};
}

inline std::vector<std::string> nonpositive_items(const ZonedBoundMatrix& m) {
  std::vector<std::string> out;
  for (int i = 1; i <= m.ell(); ++i) {
    for (int j = 1; j <= m.ell(); ++j) {
      if (m.raw(i, j) <= 0) {
        out.push_back("block(" + std::to_string(i) + "," + std::to_string(j) + ")=" + m.block(i, j).str());
      }
    }
  }
  if (m.raw_mixed() <= 0) out.push_back("mixed_floor=" + m.mixed_floor().str());
  if (m.raw_outer() <= 0) out.push_back("outer_floor=" + m.outer_floor().str());
  return out;
}

}  // namespace detail

/// Squares D log2(k) times and requires every block entry and both floors of
/// the result to be positive. A returned certificate guarantees
///   ord_p (M_1 ... M_a)_ij > sigma*a + (i - j)/s
/// for every a divisible by k and all factors with ord_p (M_t)_ij >= g_bound(i, j).
inline Certificate certify(const SupportPattern& pattern, const CertificateParams& params,
                           std::optional<int> band_width = std::nullopt) {
  Certificate attempt = detail::square_out(pattern, params, band_width);
  auto failures = detail::nonpositive_items(attempt.final_matrix);
  if (!failures.empty()) throw CertificateFailed(std::move(attempt), std::move(failures));
  return attempt;
}

struct TailExcessUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// epsilon > 0 with ord_p (M_1...M_a)_ij >= sigma*a + (i - j)/s + epsilon
/// whenever max(i, j) > L, for every a divisible by k.
inline Rational tail_excess(const Certificate& cert, int truncation) {
  if (truncation < cert.params.ell) throw std::invalid_argument("tail_excess: L must be >= ell");
  CertificateParams at_l = cert.params;
  at_l.ell = truncation;
  const Certificate wide = detail::square_out(cert.pattern, at_l, std::nullopt);
  const ExtendedRational eps = min(wide.final_matrix.mixed_floor(), wide.final_matrix.outer_floor());
  if (eps <= ExtendedRational(0)) {
    throw TailExcessUnavailable("tail_excess: floors at L = " + std::to_string(truncation) + " are not positive (" +
                                eps.str() + ")");
  }
  // Both floors infinite only happens for degenerate patterns; report a unit excess.
  return eps.is_infinite() ? Rational(1) : eps.value();
}

struct SearchCaps {
  std::int64_t s_max = 16;
  int ell_max = 64;
  int k_max = 16;
};

inline std::vector<int> ell_schedule(int ell_max) {
  std::vector<int> out;
  for (int base = 4; base <= ell_max; base *= 2) {
    out.push_back(base);
    if (base + base / 2 <= ell_max) out.push_back(base + base / 2);
  }
  if (out.empty() || out.back() != ell_max) out.push_back(ell_max);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// First (in increasing ell^3 log2 k cost) parameter set that certifies
/// sigma_target. nullopt is not a refutation: larger caps may succeed.
inline std::optional<CertificateParams> search_parameters(const SupportPattern& pattern,
                                                          const Rational& sigma_target, const SearchCaps& caps) {
  if (caps.s_max < 1 || caps.ell_max < 1 || caps.k_max < 2) throw std::invalid_argument("search_parameters: bad caps");
  struct Shape {
    int ell, k;
    double cost;
  };
  std::vector<Shape> shapes;
  for (int k = 2; k <= std::min(caps.k_max, 32); k *= 2) {
    int sq = 0;
    for (int v = k; v > 1; v >>= 1) ++sq;
    for (int ell : ell_schedule(caps.ell_max)) shapes.push_back({ell, k, double(ell) * ell * ell * sq});
  }
  std::stable_sort(shapes.begin(), shapes.end(), [](const Shape& x, const Shape& y) { return x.cost < y.cost; });
  for (const Shape& shape : shapes) {
    for (std::int64_t s = 1; s <= caps.s_max; ++s) {
      CertificateParams params{sigma_target, s, shape.ell, shape.k};
      try {
        certify(pattern, params);
        return params;
      } catch (const SignConditionFailed&) {
      } catch (const CertificateFailed&) {
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const CertificateParams& params) {
  j = {{"sigma", to_string(params.sigma)}, {"s", params.s}, {"ell", params.ell}, {"k", params.k}};
}

inline void to_json(nlohmann::json& j, const ZoneSummary& z) {
  j = {{"stage", z.stage},
       {"block_min", z.block_min.str()},
       {"mixed_floor", z.mixed_floor.str()},
       {"outer_floor", z.outer_floor.str()}};
}

inline nlohmann::json pattern_json(const SupportPattern& pattern) {
  return {{"p", pattern.prime()}, {"degree", pattern.degree()}, {"support", pattern.support()}};
}

inline void to_json(nlohmann::json& j, const Certificate& cert) {
  nlohmann::json block = nlohmann::json::array();
  for (int i = 1; i <= cert.final_matrix.ell(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 1; jj <= cert.final_matrix.ell(); ++jj) row.push_back(cert.final_matrix.block(i, jj).str());
    block.push_back(std::move(row));
  }
  j = {{"pattern", pattern_json(cert.pattern)},
       {"params", cert.params},
       {"transcript", cert.transcript},
       {"delta", cert.delta.str()},
       {"final_block", std::move(block)}};
}

}  // namespace dworkbench
