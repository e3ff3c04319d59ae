// Command-line driver: verify, ratio, scan, optimize, euler.
// Exit codes: 0 success, 1 usage/config error or failed verification, 2 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "zetagap/zetagap.hpp"

namespace {

using namespace zetagap;

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::string c_mult;
  std::string c_lo;
  std::string c_hi;
  long steps = 64;
  std::string tol;
  std::optional<unsigned> precision;
  unsigned jobs = default_jobs();
  long r = 2;
  long cutoff = 1000000;
  std::string table_path;
};

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(opt.out_path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw InternalError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::invalid_argument("cannot rename onto '" + target.string() + "': " + ec.message());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

GapConfig resolved_config(const Options& opt) {
  if (opt.config_path.empty()) throw std::invalid_argument("--config is required");
  GapConfig cfg = load_config(opt.config_path);
  if (opt.precision) cfg.precision = *opt.precision;
  cfg.validate();
  return cfg;
}

Rational required_rational(const std::string& text, const char* flag) {
  if (text.empty()) throw std::invalid_argument(std::string(flag) + " is required");
  return parse_rational(text);
}

int cmd_verify(const Options& opt) {
  std::vector<VerifyCase> table;
  if (opt.table_path.empty()) {
    table = builtin_verify_table();
  } else {
    try {
      table = parse_verify_table(detail::read_file(opt.table_path));
    } catch (const std::exception& e) {
      throw InternalError(std::string("reference table is corrupt: ") + e.what());
    }
  }
  if (opt.precision)
    for (auto& vc : table) vc.config.precision = *opt.precision;
  const Rational tol = opt.tol.empty() ? Rational(2, 1000000) : parse_rational(opt.tol);
  if (sgn(tol) < 0) throw std::invalid_argument("--tol must be nonnegative");
  const VerifyResult res = run_verify(table, tol, opt.jobs);
  write_output(opt, opt.format == "csv" ? verify_csv(res) : dump(verify_json(res)));
  for (const auto& o : res.outcomes)
    std::cerr << (o.pass ? "PASS " : "FAIL ") << o.item.name << (o.item.diagnostic ? " (diagnostic)" : "")
              << ": f = " << format_real(o.report.f_value, 15) << ", expected " << o.item.expected
              << ", admissible = " << (o.report.admissible ? "true" : "false") << "\n";
  return res.passed ? 0 : 1;
}

int cmd_ratio(const Options& opt) {
  const GapConfig cfg = resolved_config(opt);
  const Rational c = required_rational(opt.c_mult, "--c");
  if (sgn(c) <= 0) throw std::invalid_argument("--c must be positive");
  const RatioReport rep = f_series(cfg, c, opt.jobs);
  if (opt.format == "csv") {
    write_output(opt, std::string(kRatioCsvHeader) + "\n" + report_csv_row(cfg, rep) + "\n");
  } else {
    Json j;
    j["command"] = "ratio";
    j.update(report_json(cfg, rep));
    write_output(opt, dump(j));
  }
  return 0;
}

int cmd_scan(const Options& opt) {
  const GapConfig cfg = resolved_config(opt);
  const Rational lo = required_rational(opt.c_lo, "--c-lo");
  const Rational hi = required_rational(opt.c_hi, "--c-hi");
  if (opt.steps < 2) throw std::invalid_argument("--steps must be >= 2");
  if (sgn(lo) <= 0 || !(lo < hi)) throw std::invalid_argument("need 0 < --c-lo < --c-hi");
  const SeriesCoefficients coeffs = series_coefficients(cfg, opt.jobs);
  std::vector<RatioReport> rows;
  for (long k = 0; k < opt.steps; ++k) rows.push_back(evaluate_ratio(cfg, coeffs, lo + (hi - lo) * k / (opt.steps - 1)));
  if (opt.format == "csv") {
    std::string out = std::string(kRatioCsvHeader) + "\n";
    for (const auto& r : rows) out += report_csv_row(cfg, r) + "\n";
    write_output(opt, out);
  } else {
    Json j;
    j["command"] = "scan";
    j["config"] = config_json(cfg);
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json e = report_json(cfg, r);
      e.erase("config");
      arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    write_output(opt, dump(j));
  }
  return 0;
}

int cmd_optimize(const Options& opt) {
  if (opt.config_path.empty()) throw std::invalid_argument("--config is required");
  FamilySpec spec = load_family_spec(opt.config_path);
  if (opt.precision) spec.precision = *opt.precision;
  if (!opt.tol.empty()) spec.tol = parse_rational(opt.tol);
  if (!opt.c_lo.empty()) spec.c_lo = parse_rational(opt.c_lo);
  if (!opt.c_hi.empty()) spec.c_hi = parse_rational(opt.c_hi);
  spec.validate();
  const SearchResult res = optimize(spec, opt.jobs);
  write_output(opt, opt.format == "csv" ? search_csv(res) : dump(search_json(spec, res)));
  return 0;
}

int cmd_euler(const Options& opt) {
  const unsigned precision = opt.precision.value_or(50);
  const EulerProductResult res = a_const(opt.r, opt.cutoff, precision);
  write_output(opt, opt.format == "csv" ? euler_csv(res, precision) : dump(euler_json(res, precision)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap-ratio verification and search"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--precision", opt.precision, "Working precision in decimal digits")
        ->check(CLI::Range(10u, 100000u));
    cmd->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::Range(1u, 4096u));
  };

  auto* verify = app.add_subcommand("verify", "Check the built-in reference values");
  add_common(verify);
  verify->add_option("--tol", opt.tol, "Absolute tolerance on f (default 2e-6)");
  verify->add_option("--table", opt.table_path)->group("");

  auto* ratio = app.add_subcommand("ratio", "Evaluate f at one c");
  add_common(ratio);
  ratio->add_option("--config", opt.config_path, "Configuration file")->required();
  ratio->add_option("--c", opt.c_mult, "c as a multiple of pi")->required();

  auto* scan = app.add_subcommand("scan", "Tabulate f over a c range");
  add_common(scan);
  scan->add_option("--config", opt.config_path, "Configuration file")->required();
  scan->add_option("--c-lo", opt.c_lo, "Lower c, multiple of pi")->required();
  scan->add_option("--c-hi", opt.c_hi, "Upper c, multiple of pi")->required();
  scan->add_option("--steps", opt.steps, "Number of grid points (inclusive)");

  auto* optim = app.add_subcommand("optimize", "Search a monomial family for the largest certified c");
  add_common(optim);
  optim->add_option("--config", opt.config_path, "Family search file")->required();
  optim->add_option("--tol", opt.tol, "Bisection width in multiples of pi");
  optim->add_option("--c-lo", opt.c_lo, "Scan lower bound, multiple of pi");
  optim->add_option("--c-hi", opt.c_hi, "Scan upper bound, multiple of pi");

  auto* euler = app.add_subcommand("euler", "Evaluate the Euler product constant a_r");
  add_common(euler);
  euler->add_option("--r", opt.r, "r >= 1");
  euler->add_option("--cutoff", opt.cutoff, "Prime cutoff (>= 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (ratio->parsed()) return cmd_ratio(opt);
    if (scan->parsed()) return cmd_scan(opt);
    if (optim->parsed()) return cmd_optimize(opt);
    if (euler->parsed()) return cmd_euler(opt);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (...) {
    std::cerr << "internal error\n";
    return 2;
  }
}
