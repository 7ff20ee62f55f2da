// Command-line workbench: evaluate zeta by any representation, sweep grids,
// run the identity suite, scan for zeros and benchmark.
//
// Exit codes: 0 success, 1 identity/comparison failure, 2 usage or config
// error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "zeta/harness.hpp"
#include "zeta/identities.hpp"
#include "zeta/representations.hpp"
#include "zeta/special_functions.hpp"

namespace {

using namespace zeta;
namespace h = zeta::harness;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

std::string complex_str(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

void emit_or_print(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    h::write_text(out, text);
  }
}

struct EvalArgs {
  std::string s;
  std::string method = "integral_new_y";
  std::string variant;
  double tol = 1e-10;
};

int run_eval(const EvalArgs& a) {
  const Complex s = h::parse_complex(a.s);
  const MethodTag method = method_from_string(a.method);
  quad::QuadConfig q = h::GridSpec::default_quad();
  q.abs_tol = a.tol;
  SeriesConfig series = h::GridSpec::default_series();
  series.tol = a.tol;

  EvalOutcome out;
  bool failed = false;
  const auto run = [&] {
    if (a.variant.empty()) return h::evaluate(method, s, q, series);
    if (method == MethodTag::integral_fermi) {
      if (a.variant != "as_printed" && a.variant != "corrected") throw UsageError("bad variant");
      return repr::zeta_integral_fermi(
          s, q, a.variant == "as_printed" ? repr::FermiVariant::as_printed : repr::FermiVariant::corrected);
    }
    if (method == MethodTag::ramanujan) {
      if (a.variant != "as_printed" && a.variant != "shifted_digamma") throw UsageError("bad variant");
      return repr::zeta_ramanujan(s, q,
                                  a.variant == "as_printed" ? repr::RamanujanVariant::as_printed
                                                            : repr::RamanujanVariant::shifted_digamma);
    }
    if (method == MethodTag::functional_series_accel) {
      if (a.variant != "as_printed" && a.variant != "corrected") throw UsageError("bad variant");
      return repr::zeta_functional_series_accel(repr::StripPoint(s), series,
                                                a.variant == "as_printed"
                                                    ? repr::ClosedFormVariant::as_printed
                                                    : repr::ClosedFormVariant::corrected);
    }
    throw UsageError("--variant applies to integral_fermi, ramanujan and functional_series_accel");
  };
  try {
    out = run();
  } catch (const NonConvergence& e) {
    out = e.partial();
    failed = true;
    std::cerr << "error: " << e.what() << "\n";
  }
  std::printf("s = %s\nmethod = %s\nvalue = %s\nerr_estimate = %.3e\nevals = %lld\nconverged = %s\n",
              complex_str(s).c_str(), std::string(to_string(out.method)).c_str(),
              complex_str(out.value).c_str(), out.err_estimate,
              static_cast<long long>(out.evals), out.converged ? "true" : "false");
  if (!out.notes.empty()) std::printf("notes = %s\n", out.notes.c_str());
  return failed ? kNumerical : kOk;
}

int run_compare(const std::string& grid_spec, const std::string& out, const std::string& format) {
  const h::Format fmt = h::format_from_string(format);
  const h::GridSpec grid = h::load_grid(grid_spec);
  const auto rows = h::run_compare(grid);
  emit_or_print(fmt == h::Format::csv ? h::to_csv(rows) : h::to_json(rows), out);
  int disagreements = 0;
  for (const auto& row : rows) {
    for (const auto& cell : row.cells) {
      if (h::cell_disagrees(cell, row)) {
        ++disagreements;
        std::cerr << "disagreement: " << to_string(cell.method) << " at s = " << complex_str(row.s)
                  << "\n";
      }
    }
  }
  std::cerr << rows.size() << " grid points, " << disagreements << " disagreements\n";
  return disagreements > 0 ? kFailure : kOk;
}

int run_verify(const std::string& only, const std::string& params_path, const std::string& out,
               const std::string& format) {
  const h::Format fmt = h::format_from_string(format);
  std::vector<IdentityId> selection;
  if (only.empty()) {
    selection = h::all_identities();
  } else {
    for (const auto& name : h::split_list(only)) selection.push_back(identity_from_string(name));
  }
  const h::SuiteParams params =
      params_path.empty() ? h::SuiteParams{} : h::load_suite_params(params_path);
  const auto reports = h::run_identity_suite(selection, params);
  emit_or_print(fmt == h::Format::csv ? h::to_csv(reports) : h::to_json(reports), out);
  int hard = 0;
  int findings = 0;
  for (const auto& r : reports) {
    if (r.pass) continue;
    (r.expected_to_hold ? hard : findings)++;
    std::cerr << (r.expected_to_hold ? "FAIL " : "finding ") << to_string(r.id)
              << (r.variant.empty() ? "" : " [" + r.variant + "]") << ": |lhs - rhs| = "
              << r.abs_diff << "\n";
  }
  std::cerr << reports.size() << " reports, " << hard << " failures, " << findings
            << " findings on printed forms\n";
  return hard > 0 ? kFailure : kOk;
}

int run_zeros(const std::string& range, double step, const std::string& method, double tol,
              const std::string& out) {
  const auto colon = range.find(':');
  if (colon == std::string::npos) throw UsageError("--range expects tmin:tmax");
  const double t_min = h::parse_double(range.substr(0, colon));
  const double t_max = h::parse_double(range.substr(colon + 1));
  h::ZeroScanConfig cfg;
  cfg.quad.abs_tol = tol;
  cfg.series.tol = tol;
  const auto brackets = h::scan_zeros(t_min, t_max, step, method_from_string(method), cfg);
  emit_or_print(h::to_csv(brackets), out);
  std::cerr << brackets.size() << " zeros in [" << t_min << ", " << t_max << "]\n";
  return kOk;
}

int run_bench(const std::string& grid_spec, int repeats, const std::string& out,
              const std::string& format) {
  const h::Format fmt = h::format_from_string(format);
  const auto rows = h::run_bench(h::load_grid(grid_spec), repeats);
  emit_or_print(fmt == h::Format::csv ? h::to_csv(rows) : h::to_json(rows), out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann zeta workbench"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate zeta(s) with one method");
  eval->add_option("--s", eval_args.s, "s as re,im or a+bi")->required();
  eval->add_option("--method", eval_args.method, "method tag")->capture_default_str();
  eval->add_option("--tol", eval_args.tol, "absolute tolerance")->capture_default_str();
  eval->add_option("--variant", eval_args.variant,
                   "as_printed | corrected | shifted_digamma (method dependent)");

  std::string grid_spec;
  std::string out;
  std::string format = "csv";
  auto* compare = app.add_subcommand("compare", "cross-method comparison over a grid");
  compare->add_option("--grid", grid_spec, "preset (strip, critical, small) or config file")
      ->required();
  compare->add_option("--out", out, "output path ('-' for stdout)")->required();
  compare->add_option("--format", format, "csv or json")->capture_default_str();

  std::string only;
  std::string params_path;
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--only", only, "comma-separated identity ids");
  verify->add_option("--params", params_path, "parameter file");
  verify->add_option("--out", out, "output path ('-' for stdout)")->required();
  verify->add_option("--format", format, "csv or json")->capture_default_str();

  std::string range;
  double step = 0.05;
  std::string zero_method = "integral_new_y";
  double zero_tol = 1e-10;
  auto* zeros = app.add_subcommand("zeros", "scan the critical line for zeros");
  zeros->add_option("--range", range, "tmin:tmax")->required();
  zeros->add_option("--step", step, "scan step")->capture_default_str();
  zeros->add_option("--method", zero_method, "method tag")->capture_default_str();
  zeros->add_option("--tol", zero_tol, "absolute tolerance per evaluation")->capture_default_str();
  zeros->add_option("--out", out, "output path (default stdout)");

  int repeats = 3;
  auto* bench = app.add_subcommand("bench", "time methods over a grid");
  bench->add_option("--grid", grid_spec, "preset or config file")->required();
  bench->add_option("--repeats", repeats, "repeats per cell (>= 3)")->capture_default_str();
  bench->add_option("--out", out, "output path (default stdout)");
  bench->add_option("--format", format, "csv or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return run_eval(eval_args);
    if (*compare) return run_compare(grid_spec, out, format);
    if (*verify) return run_verify(only, params_path, out, format);
    if (*zeros) return run_zeros(range, step, zero_method, zero_tol, out);
    if (*bench) return run_bench(grid_spec, repeats, out, format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << "\n";
    return kUsage;
  } catch (const h::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
