#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetagap/config_io.hpp"
#include "zetagap/gap_ratio.hpp"

namespace zetagap {

/// One reference value: f at c/π for a configuration, with its displayed digits.
struct VerifyCase {
  std::string name;
  GapConfig config;
  Rational c_over_pi;
  std::string expected;  // displayed digits, truncated
  bool diagnostic = false;  // reported, not counted toward the verdict
};

inline std::vector<VerifyCase> builtin_verify_table() {
  GapConfig a;
  a.p0 = parse_polynomial("30:1");
  GapConfig b = a;
  b.p2 = parse_polynomial("165:-31.4");
  return {
      {"x30_c3", a, Rational(3), "0.999481", false},
      {"x30_x165_c3.072", b, parse_rational("3.072"), "0.999846", false},
      {"x30_x165_c3.05", b, parse_rational("3.05"), "0.999846", true},
  };
}

/// Table text: one case per line, "name | c_over_pi | expected | p0 | p2 | diagnostic(0/1)".
inline std::vector<VerifyCase> parse_verify_table(std::string_view text) {
  std::vector<VerifyCase> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty() || detail::trim(line)[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, '|');) fields.push_back(detail::trim(f));
    if (fields.size() != 6) throw std::runtime_error("verify table: expected 6 fields in '" + line + "'");
    VerifyCase vc;
    vc.name = fields[0];
    vc.c_over_pi = parse_rational(fields[1]);
    vc.expected = fields[2];
    (void)parse_rational(vc.expected);
    vc.config.p0 = parse_polynomial(fields[3]);
    vc.config.p2 = parse_polynomial(fields[4]);
    vc.diagnostic = fields[5] == "1";
    out.push_back(std::move(vc));
  }
  if (out.empty()) throw std::runtime_error("verify table is empty");
  return out;
}

struct VerifyOutcome {
  VerifyCase item;
  RatioReport report;
  Real abs_error;
  bool pass = false;
};

struct VerifyResult {
  Rational tolerance;
  std::vector<VerifyOutcome> outcomes;
  bool passed = false;  // every non-diagnostic case passed
};

/// Pass iff |f − expected| ≤ tol. Configurations sharing polynomials reuse coefficients.
inline VerifyResult run_verify(const std::vector<VerifyCase>& table, const Rational& tol, unsigned jobs) {
  VerifyResult res;
  res.tolerance = tol;
  res.passed = true;
  std::vector<std::pair<GapConfig, SeriesCoefficients>> cache;
  for (const auto& vc : table) {
    vc.config.validate();
    const SeriesCoefficients* coeffs = nullptr;
    for (const auto& [cfg, sc] : cache)
      if (cfg == vc.config) coeffs = &sc;
    if (coeffs == nullptr) {
      cache.emplace_back(vc.config, series_coefficients(vc.config, jobs));
      coeffs = &cache.back().second;
    }
    VerifyOutcome o{vc, evaluate_ratio(vc.config, *coeffs, vc.c_over_pi), {}, false};
    {
      PrecisionScope scope(vc.config.precision);
      o.abs_error = boost::multiprecision::abs(o.report.f_value - to_real(parse_rational(vc.expected)));
      o.pass = o.abs_error <= to_real(tol);
    }
    if (!vc.diagnostic && !o.pass) res.passed = false;
    res.outcomes.push_back(std::move(o));
  }
  return res;
}

inline Json verify_json(const VerifyResult& res) {
  Json j;
  j["command"] = "verify";
  j["tolerance"] = format_rational(res.tolerance);
  Json entries = Json::array();
  for (const auto& o : res.outcomes) {
    Json e;
    e["name"] = o.item.name;
    e["expected"] = o.item.expected;
    e["abs_error"] = format_real(o.abs_error, 10);
    e["status"] = o.pass ? "PASS" : "FAIL";
    e["diagnostic"] = o.item.diagnostic;
    e["report"] = report_json(o.item.config, o.report);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  j["passed"] = res.passed;
  return j;
}

inline std::string verify_csv(const VerifyResult& res) {
  std::string out = std::string("name,expected,abs_error,status,diagnostic,") + kRatioCsvHeader + "\n";
  for (const auto& o : res.outcomes)
    out += o.item.name + "," + o.item.expected + "," + format_real(o.abs_error, 10) + "," +
           (o.pass ? "PASS" : "FAIL") + "," + (o.item.diagnostic ? "true" : "false") + "," +
           report_csv_row(o.item.config, o.report) + "\n";
  return out;
}

}  // namespace zetagap
