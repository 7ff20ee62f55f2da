#include <algorithm>
#include <chrono>

#include "zeta/harness.hpp"
#include "zeta/special_functions.hpp"

namespace zeta::harness {

// Cells run sequentially so timings are not perturbed by each other.
std::vector<BenchRow> run_bench(const GridSpec& grid, int repeats) {
  if (repeats < 3) throw UsageError("bench needs at least 3 repeats");
  std::vector<BenchRow> rows;
  SeriesConfig ref_cfg;
  ref_cfg.tol = 1e-13;
  for (double sigma : grid.sigma_values) {
    for (double t : grid.t_values) {
      const Complex s(sigma, t);
      Complex reference;
      try {
        reference = special::zeta_reference(s, ref_cfg).value;
      } catch (const NonConvergence& e) {
        reference = e.partial().value;
      }
      for (MethodTag method : grid.methods) {
        BenchRow row;
        row.s = s;
        row.method = method;
        if (!method_covers(method, s)) {
          row.error = "outside the method's domain";
          rows.push_back(row);
          continue;
        }
        std::vector<double> seconds;
        for (int r = 0; r < repeats; ++r) {
          const auto start = std::chrono::steady_clock::now();
          EvalOutcome out;
          try {
            out = evaluate(method, s, grid.quad, grid.series);
          } catch (const NonConvergence& e) {
            out = e.partial();
            row.error = e.what();
          } catch (const Error& e) {
            row.error = e.what();
          }
          seconds.push_back(
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
          row.evals = out.evals;
          row.converged = out.converged;
          row.abs_error = row.error.empty() || out.evals > 0 ? std::abs(out.value - reference) : 0.0;
        }
        std::nth_element(seconds.begin(), seconds.begin() + repeats / 2, seconds.end());
        row.median_seconds = seconds[static_cast<std::size_t>(repeats / 2)];
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace zeta::harness
