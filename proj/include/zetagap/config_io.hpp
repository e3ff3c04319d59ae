#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetagap/euler_product.hpp"
#include "zetagap/gap_ratio.hpp"
#include "zetagap/moments.hpp"
#include "zetagap/optimizer.hpp"
#include "zetagap/polynomial.hpp"

namespace zetagap {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

/// "key = value" lines; '#' starts a comment. Keys must be unique.
inline std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, value).second)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return out;
}

inline long parse_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
  }
  if (used != value.size()) throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
  return v;
}

inline std::vector<long> parse_long_list(const std::string& key, const std::string& value) {
  std::string buf = value;
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  std::vector<long> out;
  for (std::string item; in >> item;) out.push_back(parse_long(key, item));
  return out;
}

inline std::string join(const std::vector<long>& v) {
  std::string out;
  for (long x : v) out += (out.empty() ? "" : ", ") + std::to_string(x);
  return out;
}

inline void reject_unknown(const std::map<std::string, std::string>& kv, const std::set<std::string>& known) {
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw std::invalid_argument("unknown key '" + k + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Keys: r, eta, J, precision, p0, p2. Missing keys keep their defaults.
inline GapConfig parse_config(std::string_view text) {
  const auto kv = detail::parse_key_values(text);
  detail::reject_unknown(kv, {"r", "eta", "J", "precision", "p0", "p2"});
  GapConfig cfg;
  if (auto it = kv.find("r"); it != kv.end()) cfg.r = detail::parse_long("r", it->second);
  if (auto it = kv.find("eta"); it != kv.end()) cfg.eta = parse_rational(it->second);
  if (auto it = kv.find("J"); it != kv.end()) cfg.truncation = detail::parse_long("J", it->second);
  if (auto it = kv.find("precision"); it != kv.end()) {
    const long p = detail::parse_long("precision", it->second);
    if (p < 10 || p > 100000) throw std::invalid_argument("precision must lie in [10, 100000]");
    cfg.precision = static_cast<unsigned>(p);
  }
  if (auto it = kv.find("p0"); it != kv.end()) cfg.p0 = parse_polynomial(it->second);
  if (auto it = kv.find("p2"); it != kv.end()) cfg.p2 = parse_polynomial(it->second);
  cfg.validate();
  return cfg;
}

inline GapConfig load_config(const std::string& path) { return parse_config(detail::read_file(path)); }

inline std::string serialize_config(const GapConfig& cfg) {
  std::ostringstream out;
  out << "r = " << cfg.r << "\n"
      << "eta = " << format_rational(cfg.eta) << "\n"
      << "J = " << cfg.truncation << "\n"
      << "precision = " << cfg.precision << "\n"
      << "p0 = " << format_polynomial(cfg.p0) << "\n"
      << "p2 = " << format_polynomial(cfg.p2) << "\n";
  return out.str();
}

/// Keys: p0_degrees, p2_degrees, p2_coeff ("lo : hi" or a single value),
/// r_values, budget, eta, J, precision, c_lo, c_hi, tol, coeff_iterations.
inline FamilySpec parse_family_spec(std::string_view text) {
  const auto kv = detail::parse_key_values(text);
  detail::reject_unknown(kv, {"p0_degrees", "p2_degrees", "p2_coeff", "r_values", "budget", "eta", "J", "precision",
                              "c_lo", "c_hi", "tol", "coeff_iterations"});
  FamilySpec spec;
  auto ints = [](const std::vector<long>& v) { return std::vector<int>(v.begin(), v.end()); };
  if (auto it = kv.find("p0_degrees"); it != kv.end()) spec.p0_degrees = ints(detail::parse_long_list(it->first, it->second));
  if (auto it = kv.find("p2_degrees"); it != kv.end()) spec.p2_degrees = ints(detail::parse_long_list(it->first, it->second));
  if (auto it = kv.find("p2_coeff"); it != kv.end()) {
    const auto colon = it->second.find(':');
    spec.p2_coeff_lo = parse_rational(it->second.substr(0, colon));
    spec.p2_coeff_hi = colon == std::string::npos ? spec.p2_coeff_lo : parse_rational(it->second.substr(colon + 1));
  }
  if (auto it = kv.find("r_values"); it != kv.end()) spec.r_values = detail::parse_long_list(it->first, it->second);
  if (auto it = kv.find("budget"); it != kv.end()) spec.budget = detail::parse_long(it->first, it->second);
  if (auto it = kv.find("eta"); it != kv.end()) spec.eta = parse_rational(it->second);
  if (auto it = kv.find("J"); it != kv.end()) spec.truncation = detail::parse_long(it->first, it->second);
  if (auto it = kv.find("precision"); it != kv.end()) {
    const long p = detail::parse_long(it->first, it->second);
    if (p < 10 || p > 100000) throw std::invalid_argument("precision must lie in [10, 100000]");
    spec.precision = static_cast<unsigned>(p);
  }
  if (auto it = kv.find("c_lo"); it != kv.end()) spec.c_lo = parse_rational(it->second);
  if (auto it = kv.find("c_hi"); it != kv.end()) spec.c_hi = parse_rational(it->second);
  if (auto it = kv.find("tol"); it != kv.end()) spec.tol = parse_rational(it->second);
  if (auto it = kv.find("coeff_iterations"); it != kv.end())
    spec.coeff_iterations = detail::parse_long(it->first, it->second);
  spec.validate();
  return spec;
}

inline FamilySpec load_family_spec(const std::string& path) { return parse_family_spec(detail::read_file(path)); }

inline std::string serialize_family_spec(const FamilySpec& spec) {
  std::ostringstream out;
  out << "p0_degrees = " << detail::join({spec.p0_degrees.begin(), spec.p0_degrees.end()}) << "\n"
      << "p2_degrees = " << detail::join({spec.p2_degrees.begin(), spec.p2_degrees.end()}) << "\n"
      << "p2_coeff = " << format_rational(spec.p2_coeff_lo) << " : " << format_rational(spec.p2_coeff_hi) << "\n"
      << "r_values = " << detail::join(spec.r_values) << "\n"
      << "budget = " << spec.budget << "\n"
      << "eta = " << format_rational(spec.eta) << "\n"
      << "J = " << spec.truncation << "\n"
      << "precision = " << spec.precision << "\n"
      << "c_lo = " << format_rational(spec.c_lo) << "\n"
      << "c_hi = " << format_rational(spec.c_hi) << "\n"
      << "tol = " << format_rational(spec.tol) << "\n"
      << "coeff_iterations = " << spec.coeff_iterations << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reports. Field names and order are fixed; high-precision reals are strings.

/// Significant digits used when printing reals computed at `precision`.
inline unsigned report_digits(unsigned precision) { return precision > 20 ? precision - 10 : 10; }

inline std::string decimal(const Rational& q, unsigned digits) {
  PrecisionScope scope(digits + 10);
  return format_real(to_real(q), digits);
}

inline Json config_json(const GapConfig& cfg) {
  Json j;
  j["r"] = cfg.r;
  j["eta"] = format_rational(cfg.eta);
  j["J"] = cfg.truncation;
  j["precision"] = cfg.precision;
  j["p0"] = format_polynomial(cfg.p0);
  j["p2"] = format_polynomial(cfg.p2);
  return j;
}

inline Json report_json(const GapConfig& cfg, const RatioReport& rep) {
  const unsigned digits = report_digits(cfg.precision);
  Json j;
  j["c_over_pi"] = format_rational(rep.c_over_pi);
  j["c_over_pi_decimal"] = decimal(rep.c_over_pi, 20);
  j["f_value"] = format_real(rep.f_value, digits);
  j["truncation_J"] = rep.truncation;
  j["tail_bound"] = format_real(rep.tail_bound, 10);
  j["h_tail"] = format_real(rep.h_tail, 10);
  j["k_tail"] = format_real(rep.k_tail, 10);
  j["rounding_bound"] = format_real(rep.rounding_bound, 10);
  j["admissible"] = rep.admissible;
  j["lambda_bound"] = rep.lambda_bound ? Json(format_rational(*rep.lambda_bound)) : Json(nullptr);
  j["h_part_bracketed"] = rep.h_part_bracketed;
  j["config"] = config_json(cfg);
  return j;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline const char* kRatioCsvHeader =
    "c_over_pi,c_over_pi_decimal,f_value,truncation_J,tail_bound,h_tail,k_tail,rounding_bound,admissible,lambda_bound,"
    "r,eta,precision,p0,p2";

inline std::string report_csv_row(const GapConfig& cfg, const RatioReport& rep) {
  const Json j = report_json(cfg, rep);
  std::string row;
  for (const char* key : {"c_over_pi", "c_over_pi_decimal", "f_value"}) row += j[key].get<std::string>() + ",";
  row += std::to_string(rep.truncation) + ",";
  for (const char* key : {"tail_bound", "h_tail", "k_tail", "rounding_bound"}) row += j[key].get<std::string>() + ",";
  row += std::string(rep.admissible ? "true" : "false") + ",";
  row += (rep.lambda_bound ? format_rational(*rep.lambda_bound) : std::string()) + ",";
  row += std::to_string(cfg.r) + "," + format_rational(cfg.eta) + "," + std::to_string(cfg.precision) + ",";
  row += csv_quote(format_polynomial(cfg.p0)) + "," + csv_quote(format_polynomial(cfg.p2));
  return row;
}

inline Json search_json(const FamilySpec& spec, const SearchResult& res) {
  Json j;
  j["command"] = "optimize";
  j["evaluations"] = res.evaluations;
  j["best"] = report_json(res.best_config, res.best_report);
  Json trace = Json::array();
  for (const auto& t : res.trace) {
    Json e;
    e["summary"] = t.summary();
    e["r"] = t.r;
    e["p0_degree"] = t.p0_degree;
    e["p2_degree"] = t.p2_degree ? Json(*t.p2_degree) : Json(nullptr);
    e["p2_coeff"] = format_rational(t.p2_coeff);
    e["c_star"] = t.c_star ? Json(format_rational(*t.c_star)) : Json(nullptr);
    e["best_so_far"] = t.best_so_far ? Json(format_rational(*t.best_so_far)) : Json(nullptr);
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  Json s;
  s["p0_degrees"] = spec.p0_degrees;
  s["p2_degrees"] = spec.p2_degrees;
  s["p2_coeff_lo"] = format_rational(spec.p2_coeff_lo);
  s["p2_coeff_hi"] = format_rational(spec.p2_coeff_hi);
  s["r_values"] = spec.r_values;
  s["budget"] = spec.budget;
  s["eta"] = format_rational(spec.eta);
  s["J"] = spec.truncation;
  s["precision"] = spec.precision;
  s["c_lo"] = format_rational(spec.c_lo);
  s["c_hi"] = format_rational(spec.c_hi);
  s["tol"] = format_rational(spec.tol);
  s["coeff_iterations"] = spec.coeff_iterations;
  j["spec"] = std::move(s);
  return j;
}

inline const char* kSearchCsvHeader = "index,r,p0_degree,p2_degree,p2_coeff,c_star,best_so_far";

inline std::string search_csv(const SearchResult& res) {
  std::string out = std::string(kSearchCsvHeader) + "\n";
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const auto& t = res.trace[i];
    out += std::to_string(i) + "," + std::to_string(t.r) + "," + std::to_string(t.p0_degree) + "," +
           (t.p2_degree ? std::to_string(*t.p2_degree) : std::string()) + "," + format_rational(t.p2_coeff) + "," +
           (t.c_star ? format_rational(*t.c_star) : std::string()) + "," +
           (t.best_so_far ? format_rational(*t.best_so_far) : std::string()) + "\n";
  }
  return out;
}

inline Json euler_json(const EulerProductResult& res, unsigned precision) {
  Json j;
  j["command"] = "euler";
  j["r"] = res.r;
  j["prime_cutoff"] = res.prime_cutoff;
  j["prime_count"] = res.prime_count;
  j["value"] = format_real(res.value, report_digits(precision));
  j["tail_estimate"] = format_real(res.tail_estimate, 10);
  j["precision"] = precision;
  return j;
}

inline std::string euler_csv(const EulerProductResult& res, unsigned precision) {
  const Json j = euler_json(res, precision);
  return "r,prime_cutoff,prime_count,value,tail_estimate,precision\n" + std::to_string(res.r) + "," +
         std::to_string(res.prime_cutoff) + "," + std::to_string(res.prime_count) + "," +
         j["value"].get<std::string>() + "," + j["tail_estimate"].get<std::string>() + "," +
         std::to_string(precision) + "\n";
}

}  // namespace zetagap
