#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zeta/core.hpp"
#include "zeta/identities.hpp"
#include "zeta/quadrature.hpp"

namespace zeta::harness {

// ---------------------------------------------------------------------------
// Method dispatch

/// Methods a grid may request: every zeta representation plus eta_reference.
const std::vector<MethodTag>& zeta_methods();

/// Evaluates zeta(s) with one method. Variants: Fermi uses the calibrated
/// prefactor, Ramanujan the shifted digamma, the accelerated series the
/// corrected Gamma-sum closed form. Throws whatever the method throws.
EvalOutcome evaluate(MethodTag method, Complex s, const quad::QuadConfig& quad,
                     const SeriesConfig& series);

/// False where a method's stated validity excludes s (e.g. Ramanujan for
/// Re s >= 1, the sinh forms outside 0 < Re s < 2).
bool method_covers(MethodTag method, Complex s);

// ---------------------------------------------------------------------------
// Grids and comparison

struct GridSpec {
  std::vector<double> sigma_values;
  std::vector<double> t_values;
  std::vector<MethodTag> methods;
  quad::QuadConfig quad = default_quad();
  SeriesConfig series = default_series();

  static quad::QuadConfig default_quad();
  static SeriesConfig default_series();

  /// Sorts and de-duplicates the value lists; throws UsageError on sigma
  /// outside (0, 2), sigma = 1 with t = 0, or invalid configs.
  void normalize();
  std::size_t size() const { return sigma_values.size() * t_values.size(); }
};

/// Presets: "strip" (the 5 x 4 strip grid, all methods), "critical" (the first
/// three zeros on Re s = 1/2), "small" (2 x 2, three methods).
bool is_preset(std::string_view name);
GridSpec preset(std::string_view name);

/// key = value lines; '#' starts a comment. Keys: sigma, t, methods,
/// quad.{abs_tol,rel_tol,max_refinements,split_point,tail_cutoff_guard},
/// series.{max_terms,tol,acceleration}. Unknown keys are a UsageError.
GridSpec parse_grid_config(std::string_view text);
/// A preset name or a config file path.
GridSpec load_grid(const std::string& spec);

struct MethodCell {
  MethodTag method = MethodTag::eta_reference;
  Complex value{};
  double err_estimate = 0.0;
  std::int64_t evals = 0;
  bool converged = false;
  std::string error;  // empty unless the evaluation threw
  bool operator==(const MethodCell&) const = default;
};

struct ComparisonRow {
  Complex s{};
  std::vector<MethodCell> cells;
  Complex reference{};
  double reference_err = 0.0;
  /// max over converged cells of |value - reference|; 0 if none converged.
  double max_abs_deviation = 0.0;
  bool operator==(const ComparisonRow&) const = default;
};

/// Every grid point in (sigma, t) order; cells in the requested method order.
/// Cells run in parallel; per-cell failures are recorded, never thrown.
std::vector<ComparisonRow> run_compare(const GridSpec& grid);

/// A converged cell disagreeing with the reference by more than 10x the sum
/// of both error estimates.
bool cell_disagrees(const MethodCell& cell, const ComparisonRow& row);

// ---------------------------------------------------------------------------
// Identity suite

/// Parameter grids per identity, plus optional tolerance overrides.
struct SuiteParams {
  std::vector<int> residue_n{1, 2, 5, 10};
  std::vector<Complex> residue_b{0.0, 1.0, -1.0, 2.0, -2.0, {1.0, -0.6}, {-0.5, 0.3}};
  std::vector<double> alternating_x{0.1, 0.3, 1.0, 2.0};
  std::vector<double> sinh_moment_k{1.0, 3.0, 0.5, 2.5};
  std::vector<Complex> classical_fe_s{0.5, 0.3, 0.7, {0.5, 3.0}};
  std::vector<std::string> classical_fe_variants{"standard", "as_printed"};
  std::vector<Complex> gamma_sum_s{0.5, {0.3, 2.0}, 1.5, {0.25, 10.0}};
  std::vector<std::string> gamma_sum_variants{"corrected", "as_printed"};
  std::int64_t gamma_sum_terms = 1 << 20;
  std::vector<double> sinh_series_y{0.1, 0.5, 1.0, 1.5};
  std::vector<Complex> fermi_s{2.0, 0.5, {0.5, 5.0}};
  std::vector<std::string> fermi_variants{"corrected", "as_printed"};
  std::vector<Complex> ramanujan_s{0.5, 0.25};
  std::vector<std::string> ramanujan_variants{"shifted_digamma", "as_printed"};
  std::map<IdentityId, double> tol_abs_override;
  std::map<IdentityId, double> tol_rel_override;
};

/// Same key = value format as grid configs, keys "<identity>.<field>", e.g.
/// "residue_integral.b = 0, 1-0.6i" or "sinh_moment.tol_rel = 1e-12".
SuiteParams parse_suite_params(std::string_view text);
SuiteParams load_suite_params(const std::string& path);

const std::vector<IdentityId>& all_identities();

/// One report per (identity, parameter tuple, variant) in selection order.
std::vector<IdentityReport> run_identity_suite(const std::vector<IdentityId>& selection,
                                               const SuiteParams& params = {});

/// True if any report expected to hold failed.
bool has_hard_failure(const std::vector<IdentityReport>& reports);

// ---------------------------------------------------------------------------
// Zeros on the critical line

/// Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t > 0.
double riemann_siegel_theta(double t);

/// e^(i theta(t)) zeta(1/2 + it) with zeta from `method`.
Complex z_function(double t, MethodTag method, const quad::QuadConfig& quad,
                   const SeriesConfig& series);

struct ZeroBracket {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double z_lo = 0.0;
  double z_hi = 0.0;
  double refined_t = 0.0;
  double residual = 0.0;
};

struct ZeroScanConfig {
  quad::QuadConfig quad = GridSpec::default_quad();
  SeriesConfig series = GridSpec::default_series();
  double noise_limit = 1e-6;  // largest |Im Z| accepted
  double bracket_width = 1e-9;
};

/// Scans t_min, t_min + step, ..., t_max for sign changes of Re Z and bisects
/// each to bracket_width. Throws UsageError unless 0 < t_min < t_max <= 60 and
/// step > 0, NoisyZ when |Im Z| exceeds the noise limit.
std::vector<ZeroBracket> scan_zeros(double t_min, double t_max, double step, MethodTag method,
                                    const ZeroScanConfig& cfg = {});

// ---------------------------------------------------------------------------
// Benchmarks

struct BenchRow {
  Complex s{};
  MethodTag method = MethodTag::eta_reference;
  double median_seconds = 0.0;
  std::int64_t evals = 0;
  double abs_error = 0.0;  // against the reference
  bool converged = false;
  std::string error;
};

/// One row per (grid point, method). Throws UsageError for repeats < 3.
std::vector<BenchRow> run_bench(const GridSpec& grid, int repeats);

// ---------------------------------------------------------------------------
// Reports

enum class Format { csv, json };
Format format_from_string(std::string_view name);

std::string to_csv(const std::vector<ComparisonRow>& rows);
std::string to_json(const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> comparison_from_csv(std::string_view text);
std::vector<ComparisonRow> comparison_from_json(std::string_view text);

std::string to_csv(const std::vector<IdentityReport>& reports);
std::string to_json(const std::vector<IdentityReport>& reports);
std::vector<IdentityReport> reports_from_csv(std::string_view text);
std::vector<IdentityReport> reports_from_json(std::string_view text);

std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_json(const std::vector<BenchRow>& rows);

std::string to_csv(const std::vector<ZeroBracket>& brackets);

/// Thrown when a report cannot be written or read.
class IoError : public Error {
 public:
  using Error::Error;
};

template <class Items>
void emit_report(const Items& items, Format format, const std::filesystem::path& dest);

void write_text(const std::filesystem::path& dest, const std::string& content);
std::string read_text(const std::filesystem::path& src);

template <class Items>
void emit_report(const Items& items, Format format, const std::filesystem::path& dest) {
  write_text(dest, format == Format::csv ? to_csv(items) : to_json(items));
}

// ---------------------------------------------------------------------------
// Parsing helpers shared by configs and the CLI

/// "0.5", "-2", "3i", "1-0.6i", "0.5+14.1i", or "re,im".
Complex parse_complex(std::string_view text);
double parse_double(std::string_view text);
std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace zeta::harness
