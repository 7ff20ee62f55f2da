#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "zeta/harness.hpp"
#include "zeta/representations.hpp"
#include "zeta/special_functions.hpp"

namespace zeta::harness {

const std::vector<MethodTag>& zeta_methods() {
  static const std::vector<MethodTag> methods = {
      MethodTag::eta_reference,    MethodTag::integral_new_y,    MethodTag::integral_new_x,
      MethodTag::integral_exp,     MethodTag::integral_fermi,    MethodTag::ramanujan,
      MethodTag::functional_series, MethodTag::functional_series_accel};
  return methods;
}

bool method_covers(MethodTag method, Complex s) {
  const double sigma = s.real();
  switch (method) {
    case MethodTag::eta_reference:
    case MethodTag::integral_exp:
    case MethodTag::integral_fermi:
      return sigma > 0.0;
    case MethodTag::ramanujan:
      return sigma >= 0.0 && sigma < 1.0;
    case MethodTag::integral_new_y:
    case MethodTag::integral_new_x:
    case MethodTag::functional_series:
    case MethodTag::functional_series_accel:
      return sigma > 0.0 && sigma < 2.0 && !(sigma == 1.0 && s.imag() == 0.0);
    default:
      return false;
  }
}

EvalOutcome evaluate(MethodTag method, Complex s, const quad::QuadConfig& quad,
                     const SeriesConfig& series) {
  switch (method) {
    case MethodTag::eta_reference:
      return special::zeta_reference(s, series);
    case MethodTag::integral_new_y:
      return repr::zeta_integral_new(repr::StripPoint(s), quad);
    case MethodTag::integral_new_x:
      return repr::zeta_integral_new_x(repr::StripPoint(s), quad);
    case MethodTag::integral_exp:
      return repr::zeta_integral_exp(s, quad);
    case MethodTag::integral_fermi:
      return repr::zeta_integral_fermi(s, quad, repr::FermiVariant::corrected);
    case MethodTag::ramanujan:
      return repr::zeta_ramanujan(s, quad, repr::RamanujanVariant::shifted_digamma);
    case MethodTag::functional_series:
      return repr::zeta_functional_series(repr::StripPoint(s), series);
    case MethodTag::functional_series_accel:
      return repr::zeta_functional_series_accel(repr::StripPoint(s), series);
    default:
      throw UsageError("method " + std::string(to_string(method)) + " does not evaluate zeta");
  }
}

namespace {

MethodCell run_cell(MethodTag method, Complex s, const GridSpec& grid) {
  MethodCell cell;
  cell.method = method;
  if (!method_covers(method, s)) {
    cell.error = "outside the method's domain";
    return cell;
  }
  try {
    const EvalOutcome out = evaluate(method, s, grid.quad, grid.series);
    cell.value = out.value;
    cell.err_estimate = out.err_estimate;
    cell.evals = out.evals;
    cell.converged = out.converged;
  } catch (const NonConvergence& e) {
    cell.value = e.partial().value;
    cell.err_estimate = e.partial().err_estimate;
    cell.evals = e.partial().evals;
    cell.error = e.what();
  } catch (const Error& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

std::vector<ComparisonRow> run_compare(const GridSpec& grid) {
  std::vector<ComparisonRow> rows;
  for (double sigma : grid.sigma_values) {
    for (double t : grid.t_values) {
      ComparisonRow row;
      row.s = Complex(sigma, t);
      row.cells.resize(grid.methods.size());
      rows.push_back(row);
    }
  }
  const std::size_t per_row = grid.methods.size() + 1;  // slot 0: reference
  // Reference at a tighter tolerance so it never dominates the comparison.
  SeriesConfig ref_cfg = grid.series;
  ref_cfg.acceleration = Acceleration::alternating;
  ref_cfg.tol = std::min(grid.series.tol, 1e-12);
  detail::parallel_for(rows.size() * per_row, [&](std::size_t idx) {
    ComparisonRow& row = rows[idx / per_row];
    const std::size_t slot = idx % per_row;
    if (slot == 0) {
      try {
        const EvalOutcome ref = special::zeta_reference(row.s, ref_cfg);
        row.reference = ref.value;
        row.reference_err = ref.err_estimate;
      } catch (const NonConvergence& e) {
        row.reference = e.partial().value;
        row.reference_err = e.partial().err_estimate;
      } catch (const Error&) {
        row.reference_err = std::numeric_limits<double>::max();  // no usable reference
      }
    } else {
      row.cells[slot - 1] = run_cell(grid.methods[slot - 1], row.s, grid);
    }
  });
  for (ComparisonRow& row : rows) {
    row.max_abs_deviation = 0.0;
    for (const MethodCell& cell : row.cells) {
      if (cell.converged) {
        row.max_abs_deviation = std::max(row.max_abs_deviation, std::abs(cell.value - row.reference));
      }
    }
  }
  return rows;
}

bool cell_disagrees(const MethodCell& cell, const ComparisonRow& row) {
  if (!cell.converged) return false;
  return std::abs(cell.value - row.reference) > 10.0 * (cell.err_estimate + row.reference_err);
}

}  // namespace zeta::harness
