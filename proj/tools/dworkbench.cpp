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

// Command-line front end. Exit codes: 0 success, 1 usage, 2 certificate or
// decision failure, 3 resource or precision limit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dworkbench/dworkbench.hpp"

namespace {

using namespace dworkbench;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kFailed = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int p = 0;
  int a = 1;
  int degree = 0;
  std::string support;
  std::string coeffs;
  std::string sigma;
  std::int64_t s = 0;
  int ell = 0;
  int k = 0;
  bool search = false;
  std::string caps = "16,64,16";
  int precision_n = 0;
  int trunc_l = 0;
  int base_change = 1;
  std::int64_t range_lo = 0;
  std::int64_t range_hi = 30;
  std::string out;
  std::string input;
  std::string format = "json";
  std::string tamper;  // test hook: shift every g_bound by this rational
};

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(trim(text), &used);
    if (used != trim(text).size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + " '" + text + "'");
  }
}

std::set<int> parse_support(const std::string& text) {
  if (trim(text).empty()) throw UsageError("--support is required");
  std::set<int> out;
  for (const auto& item : split_top_level(text, ',')) out.insert(parse_int(item, "support exponent"));
  return out;
}

/// "exp:value,..." where value is an integer mod p or "[c0 c1 ...]", coordinates
/// relative to the field's modulus.
FqPolynomial parse_coeffs(const std::string& text, const GaloisField& field) {
  if (trim(text).empty()) throw UsageError("--coeffs is required");
  FqPolynomial f;
  for (const auto& item : split_top_level(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("coefficient '" + item + "' must look like exp:value");
    const int e = parse_int(item.substr(0, colon), "exponent");
    const std::string value = trim(item.substr(colon + 1));
    GaloisField::Element c = 0;
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') throw UsageError("unterminated coordinate list '" + value + "'");
      std::istringstream is(value.substr(1, value.size() - 2));
      std::vector<int> coords;
      for (std::string tok; is >> tok;) coords.push_back(static_cast<int>(mod_floor(parse_int(tok, "coordinate"), field.characteristic())));
      if (coords.empty() || static_cast<int>(coords.size()) > field.degree()) {
        throw UsageError("coordinate list '" + value + "' needs 1.." + std::to_string(field.degree()) + " entries");
      }
      c = field.from_coordinates(coords);
    } else {
      c = field.from_integer(parse_int(value, "coefficient"));
    }
    if (f.terms.count(e)) throw UsageError("exponent " + std::to_string(e) + " given twice");
    if (c != 0) f.terms[e] = c;
  }
  return f;
}

SupportPattern pattern_from(const Options& o) {
  if (o.p == 0) throw UsageError("--p is required");
  SupportPattern pattern(o.p, parse_support(o.support));
  if (o.degree != 0 && o.degree != pattern.degree()) throw UsageError("--degree disagrees with --support");
  if (!o.tamper.empty()) pattern = pattern.with_bound_offset(parse_rational(o.tamper));
  return pattern;
}

bool has_params(const Options& o) { return !o.sigma.empty() || o.s || o.ell || o.k; }

CertificateParams params_from(const Options& o) {
  if (o.sigma.empty() || !o.s || !o.ell || !o.k) throw UsageError("--sigma, --s, --ell and --k are all required");
  return CertificateParams{parse_rational(o.sigma), o.s, o.ell, o.k};
}

SearchCaps caps_from(const Options& o) {
  const auto parts = split_top_level(o.caps, ',');
  if (parts.size() != 3) throw UsageError("--caps must be s_max,ell_max,k_max");
  return SearchCaps{parse_int(parts[0], "s_max"), parse_int(parts[1], "ell_max"), parse_int(parts[2], "k_max")};
}

void emit(const Options& o, const json& report, const std::string& text) {
  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw std::runtime_error("cannot write " + o.out);
    os << report.dump(2) << '\n';
  }
  if (o.format == "text") {
    std::cout << text;
  } else {
    std::cout << report.dump(2) << '\n';
  }
}

json inputs_json(const Options& o) {
  json j = {{"p", o.p}, {"a", o.a}};
  if (!o.support.empty()) j["support"] = o.support;
  if (!o.coeffs.empty()) j["coeffs"] = o.coeffs;
  if (!o.sigma.empty()) j["sigma"] = o.sigma;
  if (o.s) j["s"] = o.s;
  if (o.ell) j["ell"] = o.ell;
  if (o.k) j["k"] = o.k;
  return j;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_bounds(const Options& o) {
  const SupportPattern pattern = pattern_from(o);
  if (o.range_hi < o.range_lo || o.range_hi - o.range_lo > 100000) throw UsageError("range must hold at most 10^5 values");
  const bool x1 = pattern.prime() == 7 && pattern.support() == std::set<int>{2, 5};
  const bool x2 = pattern.prime() == 5 && pattern.support() == std::set<int>{1, 7};
  json rows = json::array();
  std::ostringstream text;
  text << "n\tmin_weight\tord_p bound" << (x1 || x2 ? "\tclosed form" : "") << '\n';
  bool all_match = true;
  for (std::int64_t n = o.range_lo; n <= o.range_hi; ++n) {
    const auto w = min_weight(n, pattern);
    const auto bound = w / Rational(pattern.prime() - 1);
    json row = {{"n", n}, {"min_weight", w.str()}, {"ord_p_bound", bound.str()}};
    text << n << '\t' << w.str() << '\t' << bound.str();
    if (x1 || x2) {
      const auto closed = x1 ? closed_form_x1(n) : closed_form_x2(n);
      const bool ok = x1 ? bound >= closed : bound == closed;
      all_match = all_match && ok;
      row["closed_form"] = closed.str();
      row["consistent"] = ok;
      text << '\t' << closed.str();
    }
    text << '\n';
    rows.push_back(std::move(row));
  }
  json report = {{"command", "bounds"}, {"input", inputs_json(o)}, {"linear_floor", to_string(linear_floor(pattern))}, {"rows", rows}};
  if (x1 || x2) report["closed_form_consistent"] = all_match;
  emit(o, report, text.str());
  return kOk;
}

std::string certificate_text(const Certificate& cert) {
  std::ostringstream os;
  for (const auto& z : cert.transcript) {
    os << z.stage << ": block min " << z.block_min.str() << ", mixed " << z.mixed_floor.str() << ", outer "
       << z.outer_floor.str() << '\n';
  }
  os << "delta " << cert.delta.str() << '\n';
  return os.str();
}

int cmd_certify(const Options& o) {
  const SupportPattern pattern = pattern_from(o);
  CertificateParams params;
  if (o.search) {
    if (o.sigma.empty()) throw UsageError("--search needs --sigma");
    const auto found = search_parameters(pattern, parse_rational(o.sigma), caps_from(o));
    if (!found) {
      emit(o, {{"command", "certify"}, {"input", inputs_json(o)}, {"result", "NotFound"}}, "no parameters found\n");
      return kFailed;
    }
    params = *found;
  } else {
    params = params_from(o);
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Certificate cert = certify(pattern, params);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(o, {{"command", "certify"}, {"input", inputs_json(o)}, {"result", "Certified"}, {"seconds", secs}, {"certificate", cert}},
         "certified\n" + certificate_text(cert));
    return kOk;
  } catch (const CertificateFailed& e) {
    emit(o, {{"command", "certify"}, {"input", inputs_json(o)}, {"result", "CertificateFailed"}, {"failures", e.failures},
             {"attempt", e.attempt}},
         std::string(e.what()) + '\n' + certificate_text(e.attempt));
    return kFailed;
  }
}

int cmd_decide(const Options& o) {
  const SupportPattern pattern = pattern_from(o);
  const Certificate cert = certify(pattern, params_from(o));
  const MinorBounds bounds = minor_bounds_from_certificate(cert, pattern.degree());
  const Decision decision = decide_supersingular(pattern.prime(), pattern.degree(), bounds);
  std::ostringstream text;
  text << (decision.certified ? "Certified" : "Inconclusive") << " (" << decision.admissible.size()
       << " admissible polygon(s))\n";
  for (const auto& w : decision.witnesses) text << "  witness " << w.str() << '\n';
  emit(o, {{"command", "decide"}, {"input", inputs_json(o)}, {"bounds", bounds}, {"decision", decision}}, text.str());
  return decision.certified ? kOk : kFailed;
}

int cmd_oracle(const Options& o) {
  if (o.p == 0) throw UsageError("--p is required");
  const auto field = std::make_shared<const GaloisField>(o.p, o.a);
  const FqPolynomial f = parse_coeffs(o.coeffs, *field);
  LPolynomial l = l_polynomial(field, f);
  if (o.base_change > 1) l = base_change(l, o.base_change);
  const NewtonPolygon np = np_of_l(l);
  const bool ss = is_supersingular(l);
  std::ostringstream text;
  text << "f = " << f.str(*field) << " over F_" << field->size() << (o.base_change > 1 ? ", base changed by " + std::to_string(o.base_change) : "")
       << "\nord_q b_n:";
  for (const auto& v : l.valuations) text << ' ' << v.str();
  text << '\n' << render_text(np) << (ss ? "supersingular\n" : "not supersingular\n");
  emit(o,
       {{"command", "oracle"},
        {"input", inputs_json(o)},
        {"field_modulus", field->modulus()},
        {"l_polynomial", l},
        {"polygon", np},
        {"supersingular", ss}},
       text.str());
  return kOk;
}

int cmd_dwork(const Options& o) {
  if (o.p == 0) throw UsageError("--p is required");
  const auto ext = std::make_shared<const GaloisField>(o.p, o.a);
  const FqPolynomial parsed = parse_coeffs(o.coeffs, *ext);
  bool prime_coeffs = true;
  for (const auto& [e, c] : parsed.terms) prime_coeffs = prime_coeffs && c < static_cast<GaloisField::Element>(o.p);
  const FieldPtr field = prime_coeffs ? std::make_shared<const GaloisField>(o.p, 1) : ext;
  std::set<int> support;
  for (const auto& [e, c] : parsed.terms) support.insert(e);
  const SupportPattern pattern(o.p, support);

  std::optional<Certificate> cert;
  if (has_params(o)) cert = certify(pattern, params_from(o));
  const int ell = cert ? cert->params.ell : std::max(1, o.trunc_l / 2);
  PrecisionPolicy policy = PrecisionPolicy::defaults(o.p, o.a, parsed.degree(), ell);
  if (o.precision_n) {
    policy.N = o.precision_n;
    policy.J = minimal_artin_hasse_level(o.p, policy.N);
  }
  if (o.trunc_l) {
    policy.L = o.trunc_l;
    policy.M = o.p * policy.L;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const DworkReport report = run_dwork(field, parsed, o.a, policy, cert);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream text;
  text << "ord_q C_n (truncation bound, resolved):\n";
  for (int n = 0; n < report.d; ++n) {
    const auto& e = report.sums.entries[static_cast<std::size_t>(n)];
    text << "  n=" << n << ' ' << (e.raw.exact ? "" : ">=") << e.ord_q.str() << " (" << to_string(e.path_bound) << ", "
         << (e.resolved ? "yes" : "no") << ")\n";
  }
  text << render_text(report.polygon.polygon);
  if (report.entry_check) text << "entry check: " << (report.entry_check->all_exceed ? "pass" : "FAIL") << '\n';
  json j = report;
  emit(o, {{"command", "dwork"}, {"input", inputs_json(o)}, {"seconds", secs}, {"report", j}}, text.str());
  return kOk;
}

int cmd_plot(const Options& o) {
  std::string content;
  if (o.input.empty() || o.input == "-") {
    content.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream is(o.input);
    if (!is) throw UsageError("cannot read " + o.input);
    content.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
  }
  if (trim(content).empty()) throw UsageError("plot: empty input");
  json j;
  try {
    j = json::parse(content);
  } catch (const json::exception& e) {
    throw UsageError(std::string("plot: malformed JSON: ") + e.what());
  }
  // Accept a bare polygon or any report carrying one.
  if (j.is_object() && !j.contains("vertices") && j.contains("polygon")) j = j["polygon"];
  const NewtonPolygon np = polygon_from_json(j);
  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw std::runtime_error("cannot write " + o.out);
    os << render_svg(np);
  }
  std::cout << render_text(np);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify-paper
// ---------------------------------------------------------------------------

struct Stage {
  std::string name;
  bool ok;
  json detail;
};

int cmd_verify(const Options& o) {
  std::vector<Stage> stages;
  json polygons = json::object();
  struct Family {
    std::string name;
    int p;
    std::set<int> support;
    CertificateParams params;
    int top;        // leading exponent
    int free;       // exponent of the swept coefficient
    int dwork_a;
  };
  const std::vector<Family> families = {{"X1", 7, {2, 5}, {Rational(5, 12), 12, 12, 4}, 5, 2, 4},
                                        {"X2", 5, {1, 7}, {Rational(5, 12), 8, 27, 8}, 7, 1, 8}};
  const auto record = [&](std::string name, bool ok, json detail) {
    stages.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };

  for (const auto& fam : families) {
    SupportPattern pattern(fam.p, fam.support);
    if (!o.tamper.empty()) pattern = pattern.with_bound_offset(parse_rational(o.tamper));

    bool closed_ok = true;
    for (int n = 0; n <= 1000 && closed_ok; ++n) {
      const auto bound = min_weight(n, pattern) / Rational(fam.p - 1);
      closed_ok = fam.name == "X1" ? bound >= closed_form_x1(n) : bound == closed_form_x2(n);
    }
    record(fam.name + ": bounds", closed_ok, {{"checked_up_to", 1000}});

    std::optional<Certificate> cert;
    try {
      cert = certify(pattern, fam.params);
      record(fam.name + ": certificate", true, {{"delta", cert->delta.str()}, {"transcript", cert->transcript}});
    } catch (const CertificateFailed& e) {
      record(fam.name + ": certificate", false, {{"failures", e.failures}});
    } catch (const SignConditionFailed& e) {
      record(fam.name + ": certificate", false, {{"error", e.what()}});
    }
    if (cert) {
      const auto decision = decide_supersingular(fam.p, pattern.degree(), minor_bounds_from_certificate(*cert, pattern.degree()));
      record(fam.name + ": decision", decision.certified, decision);
      if (!decision.admissible.empty()) polygons[fam.name] = decision.admissible.front();
    }

    for (int m : {1, 2}) {
      const auto field = std::make_shared<const GaloisField>(fam.p, m);
      const auto sweep = sweep_family(field, PolynomialFamily{FqPolynomial{{{fam.top, 1}}}, {fam.free}});
      std::size_t ss = 0;
      for (const auto& e : sweep) ss += e.supersingular;
      record(fam.name + ": oracle sweep over F_" + std::to_string(field->size()), ss == sweep.size(),
             {{"members", sweep.size()}, {"supersingular", ss}});
    }

    if (cert) {
      const FqPolynomial f{{{fam.top, 1}, {fam.free, 1}}};
      const auto base = std::make_shared<const GaloisField>(fam.p, 1);
      const auto oracle = base_change(l_polynomial(base, f), fam.dwork_a);
      const auto report = run_dwork(base, f, fam.dwork_a,
                                    PrecisionPolicy::defaults(fam.p, fam.dwork_a, pattern.degree(), fam.params.ell), cert);
      const bool agree = report.polygon.polygon == np_of_l(oracle);
      const bool entries = report.entry_check && report.entry_check->all_exceed;
      record(fam.name + ": dwork spot check", agree && entries,
             {{"a", fam.dwork_a}, {"polygon", report.polygon.polygon}, {"agrees_with_oracle", agree}, {"entry_bounds", entries}});
    }
  }

  for (int m : {1, 2}) {
    const auto field = std::make_shared<const GaloisField>(3, m);
    const auto sweep = sweep_family(field, PolynomialFamily{FqPolynomial{{{7, 1}}}, {2, 1}});
    std::size_t ss = 0;
    for (const auto& e : sweep) ss += e.supersingular;
    record("p=3 family: oracle sweep over F_" + std::to_string(field->size()), ss == sweep.size(),
           {{"members", sweep.size()}, {"supersingular", ss}});
  }

  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    for (auto it = polygons.begin(); it != polygons.end(); ++it) {
      std::ofstream os(std::filesystem::path(o.out) / (it.key() + ".svg"));
      os << render_svg(polygon_from_json(it.value()), it.key());
    }
  }

  json list = json::array();
  std::ostringstream text;
  std::string first_failure;
  for (const auto& s : stages) {
    list.push_back({{"stage", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    text << (s.ok ? "[ok]   " : "[FAIL] ") << s.name << '\n';
    if (!s.ok && first_failure.empty()) first_failure = s.name;
  }
  json report = {{"command", "verify-paper"}, {"stages", list}, {"polygons", polygons}, {"ok", first_failure.empty()}};
  if (!first_failure.empty()) report["first_failure"] = first_failure;
  if (o.format == "text") {
    std::cout << text.str();
  } else {
    std::cout << report.dump(2) << '\n';
  }
  if (!first_failure.empty()) {
    std::cerr << "verify-paper: failed at stage '" << first_failure << "'\n";
    return kFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dworkbench: supersingularity certificates for Artin-Schreier curves"};
  app.require_subcommand(1);
  Options o;

  const auto add_pattern = [&](CLI::App* c) {
    c->add_option("--p", o.p, "odd prime p");
    c->add_option("--support", o.support, "support exponents, e.g. 2,5");
    c->add_option("--degree", o.degree, "degree d (checked against the support)");
  };
  const auto add_params = [&](CLI::App* c) {
    c->add_option("--sigma", o.sigma, "per-factor slope gain, e.g. 5/12");
    c->add_option("--s", o.s, "drift denominator");
    c->add_option("--ell", o.ell, "exact block size");
    c->add_option("--k", o.k, "factor count granularity (power of two)");
  };
  const auto add_output = [&](CLI::App* c) {
    c->add_option("--out", o.out, "also write the report to this path");
    c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  const auto add_tamper = [&](CLI::App* c) { c->add_option("--tamper-bound", o.tamper)->group(""); };

  auto* bounds = app.add_subcommand("bounds", "tabulate valuation lower bounds for G_n");
  add_pattern(bounds);
  bounds->add_option("--from", o.range_lo, "first n");
  bounds->add_option("--to", o.range_hi, "last n");
  add_output(bounds);
  add_tamper(bounds);

  auto* certify_cmd = app.add_subcommand("certify", "run the zoned min-plus certificate");
  add_pattern(certify_cmd);
  add_params(certify_cmd);
  certify_cmd->add_flag("--search", o.search, "search (s, ell, k) for the given sigma");
  certify_cmd->add_option("--caps", o.caps, "search caps s_max,ell_max,k_max");
  add_output(certify_cmd);
  add_tamper(certify_cmd);

  auto* decide = app.add_subcommand("decide", "certificate plus polygon enumeration verdict");
  add_pattern(decide);
  add_params(decide);
  add_output(decide);
  add_tamper(decide);

  auto* oracle = app.add_subcommand("oracle", "L-polynomial by exhaustive exponential sums");
  oracle->add_option("--p", o.p, "odd prime p");
  oracle->add_option("--a", o.a, "q = p^a");
  oracle->add_option("--coeffs", o.coeffs, "exp:value,... with value an integer or [c0 c1 ...]");
  oracle->add_option("--base-change", o.base_change, "report the L-polynomial over F_{q^r}");
  add_output(oracle);

  auto* dwork = app.add_subcommand("dwork", "truncated Dwork trace formula engine");
  dwork->add_option("--p", o.p, "odd prime p");
  dwork->add_option("--a", o.a, "q = p^a");
  dwork->add_option("--coeffs", o.coeffs, "exp:value,... with value an integer or [c0 c1 ...]");
  add_params(dwork);
  dwork->add_option("--precision-N", o.precision_n, "ring precision p^N");
  dwork->add_option("--trunc-L", o.trunc_l, "matrix truncation L");
  add_output(dwork);

  auto* verify = app.add_subcommand("verify-paper", "run the whole pipeline for both families");
  verify->add_option("--out", o.out, "directory for polygon SVGs");
  verify->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  add_tamper(verify);

  auto* plot = app.add_subcommand("plot", "render a polygon JSON as SVG and text");
  plot->add_option("--in", o.input, "polygon JSON file, or - for stdin");
  plot->add_option("--out", o.out, "SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*bounds) return cmd_bounds(o);
    if (*certify_cmd) return cmd_certify(o);
    if (*decide) return cmd_decide(o);
    if (*oracle) return cmd_oracle(o);
    if (*dwork) return cmd_dwork(o);
    if (*verify) return cmd_verify(o);
    if (*plot) return cmd_plot(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CertificateFailed& e) {
    std::cerr << e.what() << '\n';
    return kFailed;
  } catch (const SignConditionFailed& e) {
    std::cerr << e.what() << '\n';
    return kFailed;
  } catch (const FieldTooLarge& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision limit: " << e.what() << '\n';
    return kResource;
  } catch (const TailBoundUnavailable& e) {
    std::cerr << "TailBoundUnavailable: " << e.what() << '\n';
    return kResource;
  } catch (const TailExcessUnavailable& e) {
    std::cerr << "TailBoundUnavailable: " << e.what() << '\n';
    return kResource;
  } catch (const NonConvergence& e) {
    std::cerr << "precision limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
