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

// Newton polygons and the supersingularity decision.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dworkbench/core.hpp"
#include "dworkbench/tropical_certifier.hpp"

namespace dworkbench {

struct PolygonVertex {
  std::int64_t x = 0;
  Rational y;

  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

class NewtonPolygon {
 public:
  NewtonPolygon() : vertices_{{0, Rational(0)}} {}

  /// Validates lower convexity, y >= 0, strictly increasing x and the origin.
  explicit NewtonPolygon(std::vector<PolygonVertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty() || vertices_.front().x != 0 || vertices_.front().y != 0) {
      throw MissingOrigin("NewtonPolygon: first vertex must be (0, 0)");
    }
    std::optional<Rational> last;
    for (std::size_t t = 1; t < vertices_.size(); ++t) {
      const auto& a = vertices_[t - 1];
      const auto& b = vertices_[t];
      if (b.x <= a.x) throw std::invalid_argument("NewtonPolygon: abscissas must increase");
      if (b.y < 0) throw std::invalid_argument("NewtonPolygon: negative ordinate");
      const Rational slope = (b.y - a.y) / (b.x - a.x);
      if (last && slope <= *last) throw std::invalid_argument("NewtonPolygon: slopes must strictly increase");
      last = slope;
    }
  }

  const std::vector<PolygonVertex>& vertices() const { return vertices_; }
  std::int64_t width() const { return vertices_.back().x; }
  const Rational& height() const { return vertices_.back().y; }

  /// Value of the piecewise-linear function at integer abscissa x.
  Rational at(std::int64_t x) const {
    if (x < 0 || x > width()) throw std::out_of_range("NewtonPolygon::at");
    for (std::size_t t = 1; t < vertices_.size(); ++t) {
      const auto& a = vertices_[t - 1];
      const auto& b = vertices_[t];
      if (x <= b.x) return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }
    return vertices_.back().y;
  }

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
  friend bool operator<(const NewtonPolygon& a, const NewtonPolygon& b) {
    return std::lexicographical_compare(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(),
                                        b.vertices_.end(), [](const PolygonVertex& u, const PolygonVertex& v) {
                                          return u.x != v.x ? u.x < v.x : u.y < v.y;
                                        });
  }

  std::string str() const {
    std::string s;
    for (const auto& v : vertices_) s += (s.empty() ? "" : " ") + ("(" + std::to_string(v.x) + "," + to_string(v.y) + ")");
    return s;
  }

 private:
  std::vector<PolygonVertex> vertices_;
};

/// Lower convex hull of (x, y) points; +inf ordinates are ignored.
inline NewtonPolygon lower_hull(std::vector<std::pair<std::int64_t, ExtendedRational>> points) {
  std::vector<PolygonVertex> finite;
  for (auto& [x, y] : points) {
    if (y.is_finite()) finite.push_back({x, y.value()});
  }
  std::sort(finite.begin(), finite.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  for (std::size_t t = 1; t < finite.size(); ++t) {
    if (finite[t].x == finite[t - 1].x) throw std::invalid_argument("lower_hull: repeated abscissa");
  }
  if (finite.empty() || finite.front().x != 0 || finite.front().y != 0) {
    throw MissingOrigin("lower_hull: the point (0, 0) is required");
  }
  std::vector<PolygonVertex> hull;
  for (const auto& pt : finite) {
    // Pop while the last two hull points and pt fail to turn strictly left.
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross = (b.y - a.y) * (pt.x - a.x) - (pt.y - a.y) * (b.x - a.x);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  return NewtonPolygon(std::move(hull));
}

inline std::vector<Rational> slopes(const NewtonPolygon& np) {
  std::vector<Rational> out;
  const auto& v = np.vertices();
  for (std::size_t t = 1; t < v.size(); ++t) {
    const Rational slope = (v[t].y - v[t - 1].y) / (v[t].x - v[t - 1].x);
    for (std::int64_t r = v[t - 1].x; r < v[t].x; ++r) out.push_back(slope);
  }
  return out;
}

inline bool is_symmetric(const NewtonPolygon& np) {
  auto s = slopes(np);
  auto mirrored = s;
  for (auto& x : mirrored) x = 1 - x;
  std::sort(mirrored.begin(), mirrored.end());
  return s == mirrored;
}

/// True when the polygon is a single segment of slope 1/2.
inline bool is_half_line(const NewtonPolygon& np) {
  return np.vertices().size() == 2 && np.height() * 2 == np.width();
}

inline NewtonPolygon scale_to_curve(const NewtonPolygon& np, int p) {
  std::vector<PolygonVertex> v = np.vertices();
  for (auto& vertex : v) {
    vertex.x *= (p - 1);
    vertex.y *= (p - 1);
  }
  return NewtonPolygon(std::move(v));
}

struct MinorBounds {
  int d = 2;
  std::vector<Rational> beta;  // beta[n-1] is the strict bound on ord_q C_n, n = 1..d-1
  std::optional<Rational> exact_end;

  const Rational& beta_at(int n) const { return beta.at(static_cast<std::size_t>(n - 1)); }
};

/// Every term of the n-th minor sum is a product of n entries whose drifts
/// cancel around each permutation cycle, so ord_q C_n > n*sigma.
inline MinorBounds minor_bounds_from_sigma(const Rational& sigma, int d) {
  if (d < 2) throw std::invalid_argument("minor bounds: d must be >= 2");
  if (sigma < 0) throw std::invalid_argument("minor bounds: sigma must be >= 0");
  MinorBounds b;
  b.d = d;
  for (int n = 1; n <= d - 1; ++n) b.beta.push_back(sigma * n);
  b.exact_end = Rational(d - 1, 2);
  return b;
}

inline MinorBounds minor_bounds_from_certificate(const Certificate& cert, int d) {
  if (d != cert.pattern.degree()) throw std::invalid_argument("minor bounds: degree mismatch with certificate");
  return minor_bounds_from_sigma(cert.params.sigma, d);
}

/// All symmetric lower-convex polygons from (0,0) to (d-1, (d-1)/2) with
/// vertex ordinates in (1/(p-1))Z, slopes in [0,1] and y_n > beta_n at every
/// interior vertex. Sorted, deterministic.
inline std::vector<NewtonPolygon> enumerate_admissible(int p, int d, const MinorBounds& bounds) {
  if (d < 2) throw std::invalid_argument("enumerate_admissible: d must be >= 2");
  if (p < 3) throw std::invalid_argument("enumerate_admissible: p must be an odd prime");
  if (static_cast<int>(bounds.beta.size()) < d - 1) throw std::invalid_argument("enumerate_admissible: need d-1 bounds");
  const std::int64_t unit = p - 1;                        // ordinates are y_units / unit
  const std::int64_t end_x = d - 1;
  const std::int64_t end_y = (d - 1) * unit / 2;          // p odd, so unit is even
  std::vector<NewtonPolygon> out;
  std::vector<PolygonVertex> chain{{0, Rational(0)}};

  // Slopes in y-units per step; compared as rationals.
  std::function<void(std::int64_t, std::int64_t, std::optional<Rational>)> dfs =
      [&](std::int64_t x, std::int64_t y, std::optional<Rational> last_slope) {
        for (std::int64_t nx = x + 1; nx <= end_x; ++nx) {
          const bool final = nx == end_x;
          for (std::int64_t ny = y; ny <= y + unit * (nx - x); ++ny) {
            if (final && ny != end_y) continue;
            const Rational slope(ny - y, nx - x);
            if (last_slope && slope <= *last_slope) continue;
            const Rational y_value(ny, unit);
            if (!final && !(y_value > bounds.beta_at(static_cast<int>(nx)))) continue;
            chain.push_back({nx, y_value});
            if (final) {
              NewtonPolygon np(chain);
              if (is_symmetric(np)) out.push_back(std::move(np));
            } else {
              dfs(nx, ny, slope);
            }
            chain.pop_back();
          }
        }
      };
  dfs(0, 0, std::nullopt);
  std::sort(out.begin(), out.end());
  return out;
}

struct Decision {
  bool certified = false;
  std::vector<NewtonPolygon> admissible;
  std::vector<NewtonPolygon> witnesses;  // admissible polygons other than the slope-1/2 line
};

inline Decision decide_supersingular(int p, int d, const MinorBounds& bounds) {
  Decision out;
  out.admissible = enumerate_admissible(p, d, bounds);
  for (const auto& np : out.admissible) {
    if (!is_half_line(np)) out.witnesses.push_back(np);
  }
  out.certified = out.witnesses.empty() && out.admissible.size() == 1;
  return out;
}

// ---------------------------------------------------------------------------
// Serialization and rendering
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const NewtonPolygon& np) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : np.vertices()) verts.push_back({v.x, to_string(v.y)});
  nlohmann::json sl = nlohmann::json::array();
  for (const auto& s : slopes(np)) sl.push_back(to_string(s));
  j = {{"vertices", std::move(verts)}, {"slopes", std::move(sl)}};
}

/// Accepts {"vertices": [[x, y], ...]} with y an integer or an "n/d" string.
inline NewtonPolygon polygon_from_json(const nlohmann::json& j) {
  const nlohmann::json& verts = j.is_object() ? j.at("vertices") : j;
  if (!verts.is_array() || verts.empty()) throw std::invalid_argument("polygon JSON: empty vertex list");
  std::vector<PolygonVertex> v;
  for (const auto& item : verts) {
    if (!item.is_array() || item.size() != 2) throw std::invalid_argument("polygon JSON: vertex must be [x, y]");
    const Rational y = item[1].is_string() ? parse_rational(item[1].get<std::string>())
                                           : Rational(item[1].get<std::int64_t>());
    v.push_back({item[0].get<std::int64_t>(), y});
  }
  return NewtonPolygon(std::move(v));
}

inline void to_json(nlohmann::json& j, const MinorBounds& b) {
  nlohmann::json beta = nlohmann::json::array();
  for (const auto& x : b.beta) beta.push_back(to_string(x));
  j = {{"d", b.d}, {"beta", std::move(beta)}};
  if (b.exact_end) j["exact_end"] = to_string(*b.exact_end);
}

inline void to_json(nlohmann::json& j, const Decision& d) {
  j = {{"verdict", d.certified ? "Certified" : "Inconclusive"},
       {"admissible_count", d.admissible.size()},
       {"witnesses", d.witnesses}};
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string render_svg(const NewtonPolygon& np, const std::string& title = "") {
  const double w = 480, h = 360, margin = 48;
  const double max_x = std::max<double>(1, static_cast<double>(np.width()));
  const double max_y = std::max(1.0, to_double(np.height()));
  auto sx = [&](double x) { return margin + x / max_x * (w - 2 * margin); };
  auto sy = [&](double y) { return h - margin - y / max_y * (h - 2 * margin); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) os << "  <text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(max_x) << "\" y2=\"" << sy(0)
     << "\" stroke=\"#888\"/>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\"" << sy(max_y)
     << "\" stroke=\"#888\"/>\n";
  os << "  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
  for (const auto& v : np.vertices()) os << sx(static_cast<double>(v.x)) << ',' << sy(to_double(v.y)) << ' ';
  os << "\"/>\n";
  for (const auto& v : np.vertices()) {
    const double x = sx(static_cast<double>(v.x)), y = sy(to_double(v.y));
    os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"#1f4e9c\"/>\n";
    os << "  <text x=\"" << x + 5 << "\" y=\"" << y - 6 << "\" font-size=\"11\">(" << v.x << ", " << to_string(v.y)
       << ")</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Vertex table followed by a coarse character plot.
inline std::string render_text(const NewtonPolygon& np) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& v : np.vertices()) os << " (" << v.x << ", " << to_string(v.y) << ")";
  os << "\nslopes:";
  for (const auto& s : slopes(np)) os << ' ' << to_string(s);
  os << '\n';
  const std::int64_t width = np.width();
  const int rows = 10;
  const double max_y = std::max(1.0, to_double(np.height()));
  for (int r = rows; r >= 0; --r) {
    std::string line(static_cast<std::size_t>(width) * 4 + 1, ' ');
    for (std::int64_t x = 0; x <= width; ++x) {
      const long row = std::lround(to_double(np.at(x)) / max_y * rows);
      if (row == r) line[static_cast<std::size_t>(x) * 4] = '*';
    }
    os << (r == 0 ? '+' : '|') << line << '\n';
  }
  return os.str();
}

}  // namespace dworkbench
