#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "zeta/harness.hpp"

using namespace zeta;
using namespace zeta::harness;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "zeta_harness_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

GridSpec small_grid(std::vector<MethodTag> methods) {
  GridSpec g;
  g.sigma_values = {0.5};
  g.t_values = {0.0};
  g.methods = std::move(methods);
  g.normalize();
  return g;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("parse helpers") {
    CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
    CHECK(parse_complex("3i") == Complex(0.0, 3.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("1-0.6i") == Complex(1.0, -0.6));
    CHECK(parse_complex("0.5+14.1i") == Complex(0.5, 14.1));
    CHECK(parse_complex("0.25,3") == Complex(0.25, 3.0));
    CHECK(parse_complex("1e-3+2e1i") == Complex(1e-3, 20.0));
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    CHECK_THROWS_AS(parse_complex(""), UsageError);
    CHECK(parse_double(" 2.5 ") == 2.5);
    CHECK_THROWS_AS(parse_double("2.5x"), UsageError);
    CHECK(split_list("a, b ,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(method_from_string("integral_new_y") == MethodTag::integral_new_y);
    CHECK_THROWS_AS(method_from_string("simpson"), UsageError);
    CHECK(format_from_string("json") == Format::json);
    CHECK_THROWS_AS(format_from_string("xml"), UsageError);
  }

  TEST_CASE("grid configs") {
    const GridSpec g = parse_grid_config(
        "# comment\nsigma = 0.75, 0.25\nt = 0, 5\nmethods = integral_new_y, eta_reference\n"
        "quad.abs_tol = 1e-9\nseries.tol = 1e-7\nseries.acceleration = none\n");
    CHECK(g.sigma_values == std::vector<double>{0.25, 0.75});
    CHECK(g.t_values == std::vector<double>{0.0, 5.0});
    CHECK(g.methods.size() == 2);
    CHECK(g.quad.abs_tol == 1e-9);
    CHECK(g.series.tol == 1e-7);
    CHECK(g.series.acceleration == Acceleration::none);
    CHECK(g.size() == 4);

    CHECK_THROWS_AS(parse_grid_config("sigma = 0.5\nt = 0\nbogus = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_grid_config("sigma = 0.5\n"), UsageError);
    CHECK_THROWS_AS(parse_grid_config("sigma = 2.5\nt = 0\n"), UsageError);
    CHECK_THROWS_AS(parse_grid_config("sigma = 1\nt = 0\n"), UsageError);
    CHECK_THROWS_AS(parse_grid_config("sigma = 0.5\nt = 0\nquad.abs_tol = -1\n"), UsageError);
    CHECK_THROWS_AS(parse_grid_config("sigma = 0.5\nt = 0\nmethods = quadrature\n"), UsageError);
    CHECK_THROWS_AS(parse_grid_config("no equals sign\n"), UsageError);
    CHECK_THROWS_AS(load_grid("/nonexistent/grid.cfg"), UsageError);

    CHECK(is_preset("strip"));
    const GridSpec strip = preset("strip");
    CHECK(strip.size() == 20);
    CHECK(strip.methods.size() == zeta_methods().size() - 1);  // all but the reference
    CHECK(preset("critical").size() == 3);
    CHECK_THROWS_AS(preset("huge"), UsageError);
  }

  TEST_CASE("suite params") {
    const SuiteParams p = parse_suite_params(
        "residue_integral.n = 3\nresidue_integral.b = 0, 1-0.6i\nsinh_moment.k = 0.5\n"
        "sinh_moment.tol_rel = 1e-12\ngamma_sum.variants = corrected\n");
    CHECK(p.residue_n == std::vector<int>{3});
    CHECK(p.residue_b.size() == 2);
    CHECK(p.residue_b[1] == Complex(1.0, -0.6));
    CHECK(p.sinh_moment_k == std::vector<double>{0.5});
    CHECK(p.tol_rel_override.at(IdentityId::sinh_moment) == 1e-12);
    CHECK(p.gamma_sum_variants == std::vector<std::string>{"corrected"});
    CHECK_THROWS_AS(parse_suite_params("sinh_moment.q = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_suite_params("gamma_sum.variants = guessed\n"), UsageError);
    CHECK_THROWS_AS(load_suite_params("/nonexistent/params.txt"), UsageError);
  }

  TEST_CASE("compare examples") {
    const auto one = run_compare(small_grid({MethodTag::integral_new_y}));
    REQUIRE(one.size() == 1);
    REQUIRE(one[0].cells.size() == 1);
    CHECK(one[0].cells[0].converged);
    CHECK(one[0].max_abs_deviation <= 1e-9);
    CHECK(std::abs(one[0].reference - oracle::kZetaHalf) < 1e-12);

    const auto none = run_compare(small_grid({}));
    REQUIRE(none.size() == 1);
    CHECK(none[0].cells.empty());
    CHECK(none[0].max_abs_deviation == 0.0);

    GridSpec zero;
    zero.sigma_values = {0.5};
    zero.t_values = {14.134725141734694};
    zero.methods = zeta_methods();
    zero.normalize();
    const auto rows = run_compare(zero);
    REQUIRE(rows.size() == 1);
    for (const MethodCell& c : rows[0].cells) {
      INFO(to_string(c.method));
      if (c.converged) CHECK(std::abs(c.value) <= 1e-7);
    }
  }

  TEST_CASE("compare rows: order, domains and deviation") {
    GridSpec g;
    g.sigma_values = {1.25, 0.5};
    g.t_values = {5.0, 0.0};
    g.methods = {MethodTag::ramanujan, MethodTag::integral_new_y, MethodTag::functional_series_accel};
    g.normalize();
    const auto rows = run_compare(g);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].s == Complex(0.5, 0.0));
    CHECK(rows[1].s == Complex(0.5, 5.0));
    CHECK(rows[2].s == Complex(1.25, 0.0));
    CHECK(rows[3].s == Complex(1.25, 5.0));
    for (const auto& row : rows) {
      REQUIRE(row.cells.size() == 3);
      CHECK(row.cells[0].method == MethodTag::ramanujan);
      if (row.s.real() > 1.0) CHECK_FALSE(row.cells[0].error.empty());
      CHECK(std::isfinite(row.max_abs_deviation));
      CHECK(row.max_abs_deviation >= 0.0);
      for (const auto& cell : row.cells) CHECK_FALSE(cell_disagrees(cell, row));
    }
  }

  TEST_CASE("identity suite") {
    SuiteParams p;
    p.sinh_moment_k = {1.0, 3.0};
    const auto moments = run_identity_suite({IdentityId::sinh_moment}, p);
    REQUIRE(moments.size() == 2);
    CHECK(moments[0].pass);
    CHECK(moments[1].pass);
    CHECK(moments[0].lhs.real() == doctest::Approx(oracle::kPi * oracle::kPi / 4.0).epsilon(1e-10));

    p.alternating_x = {1.0};
    CHECK(run_identity_suite({IdentityId::alternating_sum}, p).at(0).pass);

    p.classical_fe_s = {0.3};
    p.classical_fe_variants = {"as_printed"};
    const auto fe = run_identity_suite({IdentityId::classical_fe}, p);
    REQUIRE(fe.size() == 1);
    CHECK(fe[0].variant == "as_printed");
    CHECK(fe[0].parameter("ratio_re") == doctest::Approx(1.3 / 1.7).epsilon(1e-10));
    CHECK_FALSE(has_hard_failure(fe));

    // Tolerance overrides can force a failure.
    SuiteParams strict;
    strict.sinh_moment_k = {0.5};
    strict.tol_abs_override[IdentityId::sinh_moment] = 1e-300;
    strict.tol_rel_override[IdentityId::sinh_moment] = 1e-300;
    const auto forced = run_identity_suite({IdentityId::sinh_moment}, strict);
    CHECK(has_hard_failure(forced));
    CHECK(forced[0].notes.find("overridden") != std::string::npos);

    // Out-of-contract parameters are usage errors.
    SuiteParams bad;
    bad.residue_b = {Complex(0.0, 0.9)};
    CHECK_THROWS_AS(run_identity_suite({IdentityId::residue_integral}, bad), UsageError);
  }

  TEST_CASE("full default suite has no hard failures") {
    const auto reports = run_identity_suite(all_identities());
    CHECK_FALSE(has_hard_failure(reports));
    std::size_t residue = 0;
    for (const auto& r : reports) {
      if (r.id == IdentityId::residue_integral) ++residue;
      INFO(to_string(r.id) << " [" << r.variant << "] " << r.notes);
      if (r.expected_to_hold) CHECK(r.pass);
    }
    CHECK(residue == 28);
  }

  TEST_CASE("Riemann-Siegel theta") {
    CHECK(std::abs(riemann_siegel_theta(5.0) - oracle::kTheta5) < 1e-13);
    CHECK_THROWS_AS(riemann_siegel_theta(0.0), DomainError);
    const double h = 1e-4;
    for (double t = 5.0; t <= 60.0; t += 0.25) {
      // |theta'(t)| <= log(t / 2 pi) / 2 + 1 on this range.
      CHECK(std::abs(riemann_siegel_theta(t + h) - riemann_siegel_theta(t)) <= 2.0 * h);
    }
    // Single minimum in (0, 10).
    int turns = 0;
    double prev = riemann_siegel_theta(0.01);
    double prev_diff = -1.0;
    for (double t = 0.02; t < 10.0; t += 0.01) {
      const double cur = riemann_siegel_theta(t);
      const double diff = cur - prev;
      if ((diff > 0.0) != (prev_diff > 0.0)) ++turns;
      prev = cur;
      prev_diff = diff;
    }
    CHECK(turns == 1);
    const SeriesConfig ref = GridSpec::default_series();
    for (double t : {5.0, 10.0, 20.0}) {
      const Complex z = z_function(t, MethodTag::eta_reference, GridSpec::default_quad(), ref);
      CHECK(std::abs(z.imag()) <= 1e-8);
    }
  }

  TEST_CASE("zero scan") {
    CHECK(scan_zeros(1.0, 10.0, 0.05, MethodTag::integral_new_y).empty());
    CHECK_THROWS_AS(scan_zeros(20.0, 10.0, 0.05, MethodTag::eta_reference), UsageError);
    CHECK_THROWS_AS(scan_zeros(10.0, 10.0, 0.05, MethodTag::eta_reference), UsageError);
    CHECK_THROWS_AS(scan_zeros(10.0, 70.0, 0.05, MethodTag::eta_reference), UsageError);
    CHECK_THROWS_AS(scan_zeros(10.0, 20.0, 0.0, MethodTag::eta_reference), UsageError);
    CHECK_THROWS_AS(scan_zeros(10.0, 20.0, 0.1, MethodTag::quadrature), UsageError);

    const auto coarse = scan_zeros(10.0, 30.0, 0.05, MethodTag::eta_reference);
    const auto fine = scan_zeros(10.0, 30.0, 0.005, MethodTag::eta_reference);
    CHECK(coarse.size() == fine.size());
    REQUIRE(coarse.size() == 3);
    const double zeros[] = {oracle::kZero1, oracle::kZero2, oracle::kZero3};
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(coarse[i].refined_t - zeros[i]) < 1e-6);
      CHECK(coarse[i].t_lo <= coarse[i].refined_t);
      CHECK(coarse[i].refined_t <= coarse[i].t_hi);
    }

    ZeroScanConfig noisy;
    noisy.noise_limit = 1e-300;
    CHECK_THROWS_AS(scan_zeros(10.0, 12.0, 0.5, MethodTag::integral_new_y, noisy), NoisyZ);
  }

  TEST_CASE("bench rows") {
    GridSpec g;
    g.sigma_values = {0.5, 1.25};
    g.t_values = {0.0};
    g.methods = {MethodTag::functional_series, MethodTag::functional_series_accel,
                 MethodTag::ramanujan};
    g.series.tol = 1e-8;
    g.normalize();
    const auto rows = run_bench(g, 3);
    CHECK(rows.size() == g.size() * g.methods.size());
    // At s = 0.5 the accelerated series needs fewer terms.
    CHECK(rows[1].evals < rows[0].evals);
    CHECK(rows[1].abs_error <= 1e-8);
    CHECK_FALSE(rows[5].error.empty());  // Ramanujan outside its strip
    CHECK_THROWS_AS(run_bench(g, 2), UsageError);
    CHECK(to_csv(rows).find("median_seconds") != std::string::npos);
  }

  TEST_CASE("reference cost grows at most linearly in the term budget") {
    // Plain partial sums at a tolerance no budget can meet: evals == budget.
    const auto seconds_for = [](std::int64_t budget) {
      GridSpec g;
      g.sigma_values = {0.5};
      g.t_values = {1.0};
      g.methods = {MethodTag::eta_reference};
      g.series.tol = 1e-300;
      g.series.max_terms = budget;
      g.series.acceleration = Acceleration::none;
      g.normalize();
      const auto rows = run_bench(g, 5);
      CHECK(rows[0].evals <= budget);
      return rows[0].median_seconds;
    };
    const double small = seconds_for(200000);
    const double large = seconds_for(800000);
    CHECK(large <= 4.0 * small * 2.0 + 1e-3);
  }

  TEST_CASE("comparison CSV and JSON round trip") {
    GridSpec g;
    g.sigma_values = {0.25, 0.75};
    g.t_values = {0.0, 5.0};
    g.methods = {MethodTag::integral_new_y, MethodTag::ramanujan};
    g.normalize();
    auto rows = run_compare(g);
    rows.resize(3);
    CHECK(comparison_from_csv(to_csv(rows)) == rows);
    CHECK(comparison_from_json(to_json(rows)) == rows);

    const std::string json = to_json(rows);
    CHECK(json.find("\"re\"") != std::string::npos);
    CHECK(json.find("\"im\"") != std::string::npos);

    const std::vector<ComparisonRow> empty;
    const std::string header = to_csv(empty);
    CHECK(std::count(header.begin(), header.end(), '\n') == 1);
    CHECK(comparison_from_csv(header).empty());
    CHECK(comparison_from_json(to_json(empty)).empty());
    CHECK(to_json(empty).find('[') != std::string::npos);
  }

  TEST_CASE("report CSV and JSON round trip") {
    SuiteParams p;
    p.classical_fe_s = {0.3, {0.5, 3.0}};
    const auto reports = run_identity_suite({IdentityId::classical_fe, IdentityId::ramanujan}, p);
    CHECK(reports_from_csv(to_csv(reports)) == reports);
    CHECK(reports_from_json(to_json(reports)) == reports);
    CHECK(reports_from_csv(to_csv(std::vector<IdentityReport>{})).empty());
    CHECK_THROWS_AS(reports_from_csv("not,a,header\n"), IoError);
  }

  TEST_CASE("CSV is deterministic") {
    const GridSpec g = preset("small");
    const std::string a = to_csv(run_compare(g));
    const std::string b = to_csv(run_compare(g));
    CHECK(a == b);
    CHECK(a.find('\r') == std::string::npos);
  }

  TEST_CASE("file output") {
    const auto dir = scratch_dir();
    const auto rows = run_compare(small_grid({MethodTag::integral_exp}));
    emit_report(rows, Format::csv, dir / "rows.csv");
    CHECK(comparison_from_csv(read_text(dir / "rows.csv")) == rows);
    emit_report(rows, Format::json, dir / "rows.json");
    CHECK(comparison_from_json(read_text(dir / "rows.json")) == rows);
    CHECK_THROWS_AS(emit_report(rows, Format::csv, dir / "missing" / "deeper" / "rows.csv"), IoError);
    CHECK_THROWS_AS(read_text(dir / "does_not_exist.csv"), IoError);
  }
}
