#include <doctest.h>

#include "oracles.hpp"
#include "zeta/identities.hpp"

using namespace zeta;
using namespace zeta::identities;

namespace {

// (pi/2) n^(-ib) / sqrt(n) / sin((pi/2)(1/2 + ib)), written out with plain
// std::complex arithmetic.
Complex residue_rhs(int n, Complex b) {
  const Complex i(0.0, 1.0);
  const double pi = oracle::kPi;
  return pi / 2.0 * std::pow(Complex(n), -i * b) / std::sqrt(double(n)) /
         std::sin(pi / 2.0 * (0.5 + i * b));
}

}  // namespace

TEST_SUITE("identities") {
  TEST_CASE("identity names round trip") {
    for (IdentityId id : {IdentityId::residue_integral, IdentityId::alternating_sum,
                          IdentityId::sinh_moment, IdentityId::classical_fe, IdentityId::gamma_sum,
                          IdentityId::sinh_series, IdentityId::fermi_ratio, IdentityId::ramanujan}) {
      CHECK(identity_from_string(to_string(id)) == id);
    }
    CHECK_THROWS_AS(identity_from_string("nope"), UsageError);
  }

  TEST_CASE("finalize") {
    IdentityReport r;
    r.lhs = 1.0;
    r.rhs = 1.0 + 1e-10;
    r.tol_rel = 1e-9;
    finalize(r);
    CHECK(r.pass);
    CHECK(r.abs_diff == doctest::Approx(1e-10).epsilon(1e-5));
    r.tol_rel = 1e-11;
    finalize(r);
    CHECK_FALSE(r.pass);
    r.lhs = Complex(std::nan(""), 0.0);
    r.tol_abs = 1e300;
    finalize(r);
    CHECK_FALSE(r.pass);
    CHECK_THROWS_AS(r.parameter("missing"), std::out_of_range);
  }

  TEST_CASE("residue integral examples") {
    const IdentityReport r = check_residue_integral(1, 0.0);
    CHECK(r.pass);
    CHECK(std::abs(r.rhs - oracle::kPi / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(r.lhs - oracle::kPi / std::sqrt(2.0)) < 1e-9 * oracle::kPi);
    CHECK(r.parameter("n") == 1.0);

    const IdentityReport four = check_residue_integral(4, 0.0);
    CHECK(std::abs(four.rhs - oracle::kPi / (2.0 * std::sqrt(2.0))) < 1e-15);
    CHECK(four.pass);

    const IdentityReport skew = check_residue_integral(2, {1.0, -0.6});
    CHECK(skew.pass);
    CHECK(skew.rel_diff <= 1e-9);
    CHECK(oracle::rel_err(skew.rhs, residue_rhs(2, {1.0, -0.6})) < 1e-14);
  }

  TEST_CASE("residue integral on the acceptance grid") {
    for (int n : {1, 2, 5, 10}) {
      for (Complex b : {Complex(0.0), Complex(1.0), Complex(-1.0), Complex(2.0), Complex(-2.0),
                        Complex(1.0, -0.6), Complex(-0.5, 0.3)}) {
        const IdentityReport r = check_residue_integral(n, b);
        INFO("n = " << n << " b = " << b << " rel " << r.rel_diff);
        CHECK(r.pass);
        CHECK(oracle::rel_err(r.rhs, residue_rhs(n, b)) < 1e-13);
      }
    }
    CHECK_THROWS_AS(check_residue_integral(1, {0.0, 0.5}), DomainError);
    CHECK_THROWS_AS(check_residue_integral(1, {0.0, -1.5}), DomainError);
    CHECK_THROWS_AS(check_residue_integral(0, 0.0), DomainError);
  }

  TEST_CASE("alternating sum with hyperbolic cosecant") {
    for (double x : {0.1, 0.3, 1.0, 2.0}) {
      const IdentityReport r = check_alternating_sum(x);
      INFO("x = " << x << " diff " << r.abs_diff);
      CHECK(r.pass);
      CHECK(r.abs_diff <= 1e-11);
    }
    // x -> 0: sum (-1)^n / n^2 = -pi^2 / 12.
    CHECK(std::abs(alternating_sum_closed_form(1e-6) + oracle::kPi * oracle::kPi / 12.0) < 1e-10);
    // At x = 1 against the extended-precision quotient.
    const double u = oracle::kPi;
    const double want = -static_cast<double>(oracle::one_minus_y_over_sinh(u)) / 2.0;
    CHECK(std::abs(alternating_sum_closed_form(1.0) - want) < 1e-14);
    // The circular cosecant reading fails already at the first grid point.
    const double circ = (u / std::sin(u * 0.01) * 0.01 - 1.0) / (2.0 * 1e-4);
    CHECK(std::abs(check_alternating_sum(0.1).lhs.real() - circ) > 1e-3);
    CHECK_THROWS_AS(check_alternating_sum(0.0), DomainError);
  }

  TEST_CASE("sinh moments") {
    const IdentityReport k1 = check_sinh_moment(1.0);
    CHECK(k1.pass);
    CHECK(std::abs(k1.lhs.real() / (oracle::kPi * oracle::kPi / 4.0) - 1.0) <= 1e-10);
    const IdentityReport k3 = check_sinh_moment(3.0);
    CHECK(k3.pass);
    CHECK(std::abs(k3.lhs.real() / (std::pow(oracle::kPi, 4) / 8.0) - 1.0) <= 1e-10);
    for (double k : {0.5, 2.5}) {
      const IdentityReport r = check_sinh_moment(k);
      INFO("k = " << k);
      CHECK(r.pass);
      // Right-hand side from the independent Stirling and Euler-Maclaurin oracles.
      const double want = (2.0 - std::pow(2.0, -k)) * oracle::gamma(1.0 + k).real() *
                          oracle::zeta_direct(1.0 + k).real();
      CHECK(std::abs(r.lhs.real() / want - 1.0) <= 1e-10);
    }
    CHECK_THROWS_AS(check_sinh_moment(0.0), DomainError);
  }

  TEST_CASE("classical functional equation") {
    for (FeVariant v : {FeVariant::standard, FeVariant::as_printed}) {
      const IdentityReport mid = check_classical_functional_equation(0.5, v);
      CHECK(mid.pass);
    }
    for (Complex s : {Complex(0.3), Complex(0.7), Complex(0.5, 3.0)}) {
      const IdentityReport r = check_classical_functional_equation(s, FeVariant::standard);
      INFO("s = " << s);
      CHECK(r.pass);
      CHECK(r.rel_diff <= 1e-9);
      CHECK(r.expected_to_hold);
    }
    // The displayed Gamma(s/2 - 1) shifts give LHS/RHS = (1 + s) / (2 - s).
    const IdentityReport printed = check_classical_functional_equation(0.3, FeVariant::as_printed);
    CHECK_FALSE(printed.expected_to_hold);
    CHECK_FALSE(printed.pass);
    CHECK(printed.parameter("ratio_re") == doctest::Approx(1.3 / 1.7).epsilon(1e-10));
    CHECK(std::abs(printed.parameter("ratio_im")) < 1e-12);
    CHECK_THROWS_AS(check_classical_functional_equation(1.5, FeVariant::standard), DomainError);
  }

  TEST_CASE("sinh series expansion") {
    const IdentityReport one = sinh_series_expansion_check(1.0);
    CHECK(one.pass);
    CHECK(one.lhs.real() == doctest::Approx(oracle::kSinh1Minus1).epsilon(1e-15));
    const IdentityReport small = sinh_series_expansion_check(0.1);
    CHECK(small.pass);
    CHECK(small.parameter("three_term_error") <= 1e-9);
    CHECK(small.parameter("c6_estimate") == doctest::Approx(31.0 / 15120).epsilon(1e-4));
    const IdentityReport half = sinh_series_expansion_check(0.5);
    CHECK(half.pass);
    CHECK(half.abs_diff <= 1e-14);
    CHECK_THROWS_AS(sinh_series_expansion_check(2.5), DomainError);
  }

  TEST_CASE("Gamma-sum closed form: printed sign is refuted, flipped sign holds") {
    const struct {
      Complex s;
      Complex sum;
    } points[] = {{0.5, oracle::kGammaSum0_5},
                  {{0.3, 2.0}, oracle::kGammaSum03_2i},
                  {1.5, oracle::kGammaSum1_5},
                  {{0.25, 10.0}, oracle::kGammaSum025_10i}};
    for (const auto& p : points) {
      INFO("s = " << p.s);
      const IdentityReport fixed = check_gamma_sum(p.s, repr::ClosedFormVariant::corrected);
      CHECK(fixed.pass);
      CHECK(fixed.expected_to_hold);
      CHECK(std::abs(fixed.rhs - p.sum) <= fixed.tol_abs);
      CHECK(fixed.parameter("raw_tail_bound") > 0.0);
      const IdentityReport printed = check_gamma_sum(p.s, repr::ClosedFormVariant::as_printed);
      CHECK_FALSE(printed.pass);
      CHECK_FALSE(printed.expected_to_hold);
      CHECK(printed.abs_diff > 1e3 * printed.tol_abs);
    }
  }

  TEST_CASE("Fermi prefactor ratio") {
    for (Complex s : {Complex(2.0), Complex(0.5), Complex(0.5, 5.0)}) {
      INFO("s = " << s);
      const IdentityReport fixed = check_fermi(s, repr::FermiVariant::corrected);
      CHECK(fixed.pass);
      const IdentityReport printed = check_fermi(s, repr::FermiVariant::as_printed);
      CHECK_FALSE(printed.expected_to_hold);
      const Complex ratio(printed.parameter("ratio_re"), printed.parameter("ratio_im"));
      CHECK(std::abs(ratio - std::pow(Complex(2.0), s - 1.0)) < 1e-8);
    }
  }

  TEST_CASE("Ramanujan form evidence") {
    const IdentityReport printed = check_ramanujan(0.5, repr::RamanujanVariant::as_printed);
    CHECK(printed.parameter("divergence_detected") == 1.0);
    CHECK_FALSE(printed.pass);
    const IdentityReport shifted = check_ramanujan(0.5, repr::RamanujanVariant::shifted_digamma);
    CHECK(shifted.parameter("divergence_detected") == 0.0);
    CHECK(std::abs(shifted.rhs - oracle::kZetaHalf) < 1e-12);
    CHECK(shifted.pass);
  }
}
