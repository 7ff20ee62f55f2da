#include "zeta/identities.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zeta/quadrature.hpp"
#include "zeta/special_functions.hpp"

namespace zeta {
namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 8> kIdentityNames = {{
    {IdentityId::residue_integral, "residue_integral"},
    {IdentityId::alternating_sum, "alternating_sum"},
    {IdentityId::sinh_moment, "sinh_moment"},
    {IdentityId::classical_fe, "classical_fe"},
    {IdentityId::gamma_sum, "gamma_sum"},
    {IdentityId::sinh_series, "sinh_series"},
    {IdentityId::fermi_ratio, "fermi_ratio"},
    {IdentityId::ramanujan, "ramanujan"},
}};

Complex reference_zeta(Complex s, double tol = 1e-13) {
  SeriesConfig cfg;
  cfg.tol = tol;
  try {
    return special::zeta_reference(s, cfg).value;
  } catch (const NonConvergence& e) {
    return e.partial().value;
  }
}

// Runs an evaluation and keeps the partial outcome on non-convergence.
template <class Fn>
EvalOutcome evaluate_keeping_partial(Fn&& fn, std::string& notes) {
  try {
    return fn();
  } catch (const NonConvergence& e) {
    notes += std::string(notes.empty() ? "" : "; ") + "not converged: " + e.what();
    return e.partial();
  }
}

void add_complex(IdentityReport& r, const std::string& name, Complex z) {
  r.parameters.push_back({name + "_re", z.real()});
  r.parameters.push_back({name + "_im", z.imag()});
}

}  // namespace

std::string_view to_string(IdentityId id) {
  for (const auto& [key, name] : kIdentityNames) {
    if (key == id) return name;
  }
  return "unknown";
}

IdentityId identity_from_string(std::string_view name) {
  for (const auto& [key, n] : kIdentityNames) {
    if (n == name) return key;
  }
  throw UsageError("unknown identity id: " + std::string(name));
}

double IdentityReport::parameter(std::string_view name) const {
  for (const NamedScalar& p : parameters) {
    if (p.name == name) return p.value;
  }
  throw std::out_of_range("report has no parameter " + std::string(name));
}

void finalize(IdentityReport& r) {
  r.abs_diff = std::abs(r.lhs - r.rhs);
  r.rel_diff = r.abs_diff / std::max(std::abs(r.rhs), DBL_MIN);
  r.pass = std::isfinite(r.abs_diff) && (r.abs_diff <= r.tol_abs || r.rel_diff <= r.tol_rel);
}

namespace identities {

IdentityReport check_residue_integral(int n, Complex b) {
  if (n < 1) throw DomainError("check_residue_integral requires n >= 1");
  if (!(b.imag() > -1.45 && b.imag() < 0.45)) {
    throw DomainError("check_residue_integral requires -1.45 < Im b < 0.45");
  }
  IdentityReport r;
  r.id = IdentityId::residue_integral;
  r.parameters = {{"n", static_cast<double>(n)}};
  add_complex(r, "b", b);
  r.tol_rel = 1e-9;

  const double n2 = static_cast<double>(n) * n;
  const double root = std::sqrt(static_cast<double>(n));
  const Complex w = -2.0 * Complex(0.0, 1.0) * b;  // |x|^(-2ib) = exp(w log x)
  quad::Integrand f;
  f.f = [=](double x) -> Complex {
    const double lx = std::log(x);
    if (x <= root) return std::exp((2.0 + w) * lx) / (x * x * x * x + n2);
    const double inv = n2 / (x * x) / (x * x);
    return std::exp((w - 2.0) * lx) / (1.0 + inv);
  };
  f.endpoint_exponent = 2.0 + 2.0 * b.imag();
  f.tail = quad::TailKind::algebraic;
  f.tail_power = 2.0 - 2.0 * b.imag();
  f.value_noise = 4.0 * kEps * std::abs(w);
  quad::QuadConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-12;
  cfg.split_point = root;

  const Complex arg = 0.5 * kPi * (0.5 + Complex(0.0, 1.0) * b);
  r.rhs = 0.5 * kPi * std::exp(-Complex(0.0, 1.0) * b * std::log(static_cast<double>(n))) / root /
          std::sin(arg);
  try {
    r.lhs = evaluate_keeping_partial([&] { return quad::integrate_real_line_symmetric(f, cfg); },
                                     r.notes)
                .value;
  } catch (const Error& e) {
    r.notes = std::string("quadrature failed: ") + e.what();
    r.lhs = 0.0;
  }
  finalize(r);
  return r;
}

double alternating_sum_closed_form(double x) {
  return -0.5 * kPi * kPi * repr::sinh_quotient(Complex(kPi * x * x, 0.0)).real();
}

IdentityReport check_alternating_sum(double x) {
  if (!(x > 0.0) || !(kPi * x * x < 700.0)) {
    throw DomainError("check_alternating_sum requires x > 0 and pi x^2 < 700");
  }
  IdentityReport r;
  r.id = IdentityId::alternating_sum;
  r.parameters = {{"x", x}};
  r.tol_abs = 1e-11;

  const long double x4 = static_cast<long double>(x) * x * x * x;
  // Alternating tail after N is below the first omitted term.
  const auto n_terms = static_cast<std::int64_t>(std::ceil(std::sqrt(1e13)));
  long double sum = 0.0L;
  for (std::int64_t k = n_terms; k >= 1; --k) {  // small terms first
    const long double kk = static_cast<long double>(k);
    const long double term = 1.0L / (x4 + kk * kk);
    sum += (k % 2 == 0) ? term : -term;
  }
  r.parameters.push_back({"terms", static_cast<double>(n_terms)});
  r.lhs = static_cast<double>(sum);
  r.rhs = alternating_sum_closed_form(x);
  r.notes = "closed form with hyperbolic cosecant";
  finalize(r);
  return r;
}

IdentityReport check_sinh_moment(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("check_sinh_moment requires k > 0");
  IdentityReport r;
  r.id = IdentityId::sinh_moment;
  r.parameters = {{"k", k}};
  r.tol_rel = 1e-10;

  quad::Integrand f;
  f.f = [=](double y) -> Complex {
    const double ratio = y > 20.0 ? 2.0 * y * std::exp(-y) / (1.0 - std::exp(-2.0 * y))
                                  : y / std::sinh(y);
    return std::pow(y, k - 1.0) * ratio;
  };
  f.endpoint_exponent = k - 1.0;
  f.tail = quad::TailKind::exponential;
  f.tail_rate = 1.0;
  f.tail_power = k;
  quad::QuadConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = 1e-13;
  try {
    r.lhs = evaluate_keeping_partial([&] { return quad::integrate_zero_to_inf(f, cfg); }, r.notes)
                .value;
  } catch (const Error& e) {
    r.notes = std::string("quadrature failed: ") + e.what();
  }
  r.rhs = (2.0 - std::pow(2.0, -k)) * std::tgamma(1.0 + k) *
          reference_zeta(Complex(1.0 + k, 0.0), 1e-14).real();
  finalize(r);
  return r;
}

IdentityReport check_classical_functional_equation(Complex s, FeVariant variant) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) {
    throw DomainError("check_classical_functional_equation requires 0 < Re s < 1");
  }
  IdentityReport r;
  r.id = IdentityId::classical_fe;
  const bool printed = variant == FeVariant::as_printed;
  r.variant = printed ? "as_printed" : "standard";
  r.expected_to_hold = !printed;
  r.tol_rel = 1e-9;
  add_complex(r, "s", s);

  const double shift = printed ? -1.0 : 0.0;
  const Complex t = 1.0 - s;
  r.lhs = special::gamma_complex(0.5 * s + shift) * real_pow(kPi, -0.5 * s) * reference_zeta(s);
  r.rhs = special::gamma_complex(0.5 * t + shift) * real_pow(kPi, -0.5 * t) * reference_zeta(t);
  add_complex(r, "ratio", r.lhs / r.rhs);
  r.notes = printed ? "Gamma(s/2 - 1) as displayed" : "Gamma(s/2)";
  finalize(r);
  return r;
}

IdentityReport sinh_series_expansion_check(double y) {
  if (!(y > 0.0 && y < 2.0)) throw DomainError("sinh_series_expansion_check requires 0 < y < 2");
  IdentityReport r;
  r.id = IdentityId::sinh_series;
  r.parameters = {{"y", y}};
  r.tol_abs = 1e-14;

  double series = 0.0;
  double term = y;
  int terms = 0;
  for (int n = 1;; ++n) {
    term *= y * y / ((2.0 * n) * (2.0 * n + 1.0));
    series += term;
    ++terms;
    // Remaining terms shrink at least geometrically with ratio y^2 / 20.
    if (term < 1e-16 * (1.0 - y * y / 20.0)) break;
  }
  r.lhs = std::sinh(y) - y;
  r.rhs = series;
  r.parameters.push_back({"series_terms", static_cast<double>(terms)});

  // Head expansion against an extended-precision quotient.
  const long double yl = y;
  const long double quotient = 1.0L - yl / std::sinh(yl);
  const double head = (y * y * repr::sinh_quotient(Complex(y, 0.0))).real();
  const double head_err = std::abs(head - static_cast<double>(quotient));
  r.parameters.push_back({"head_error", head_err});
  const double head3 = y * y / 6 - 7 * std::pow(y, 4) / 360 + 31 * std::pow(y, 6) / 15120;
  r.parameters.push_back({"three_term_error", std::abs(head3 - static_cast<double>(quotient))});

  // y^6 coefficient from the quotient at a small argument.
  const long double h = 0.02L;
  const long double q = 1.0L - h / std::sinh(h);
  const long double c6 = (q - h * h / 6.0L + 7.0L * h * h * h * h / 360.0L) / std::pow(h, 6.0L);
  const double c6_rel = std::abs(static_cast<double>(c6) - 31.0 / 15120) / (31.0 / 15120);
  r.parameters.push_back({"c6_estimate", static_cast<double>(c6)});

  finalize(r);
  // Above the Taylor switch the head is 1 - y / sinh y in double, so its
  // absolute rounding is a few ulps of 1.
  const bool head_ok = head_err <= 1e-15 * static_cast<double>(quotient) + 4.0 * kEps;
  const bool c6_ok = c6_rel <= 1e-4;
  if (!head_ok) r.notes = "head expansion disagrees with the quotient";
  if (!c6_ok) r.notes += std::string(r.notes.empty() ? "" : "; ") + "y^6 coefficient mismatch";
  r.pass = r.pass && head_ok && c6_ok;
  return r;
}

IdentityReport check_gamma_sum(Complex s, repr::ClosedFormVariant variant, std::int64_t max_terms) {
  IdentityReport r;
  r.id = IdentityId::gamma_sum;
  const bool printed = variant == repr::ClosedFormVariant::as_printed;
  r.variant = printed ? "as_printed" : "corrected";
  r.expected_to_hold = !printed;
  add_complex(r, "s", s);
  if (!(s.real() > 0.0)) throw DomainError("check_gamma_sum requires Re s > 0");

  constexpr int kLevels = 8;
  const std::int64_t n0 = std::max<std::int64_t>(max_terms >> (kLevels - 1), 1);
  std::vector<std::int64_t> checkpoints;
  for (int j = 0; j < kLevels; ++j) checkpoints.push_back(n0 << j);
  const std::vector<Complex> sums = repr::gamma_sum_partials(s, checkpoints);
  const auto [estimate, extrap_err] = repr::richardson_doubling(sums, s);

  const double sigma = s.real();
  const double n_max = static_cast<double>(checkpoints.back());
  const double raw_bound =
      (1.0 + std::pow(2.0, sigma - 2.0 * n_max - 1.0)) * std::pow(2.0 * n_max, -sigma) / sigma;

  r.lhs = repr::gamma_sum_closed_form(s, variant);
  r.rhs = estimate;
  // The closed form cancels between its two Gamma terms; allow for their rounding.
  const double closed_rounding =
      1e-14 * (std::abs(special::gamma_complex(-s)) *
                   (1.0 + std::abs(real_pow(3.0, s)) + std::abs(s) * (2.0 + std::abs(real_pow(2.0, s)))) +
               std::abs(r.lhs));
  r.tol_abs = 10.0 * extrap_err + closed_rounding + 1e-14 * std::max(1.0, std::abs(estimate));
  const double partial_diff = std::abs(r.lhs - sums.back());
  r.parameters.push_back({"terms", n_max});
  r.parameters.push_back({"extrapolation_error", extrap_err});
  r.parameters.push_back({"raw_tail_bound", raw_bound});
  r.parameters.push_back({"partial_sum_diff", partial_diff});
  r.parameters.push_back({"within_raw_tail_bound", partial_diff <= raw_bound ? 1.0 : 0.0});
  r.notes = printed ? "closed form as displayed" : "closed form with sign of s(2^s - 2) flipped";
  finalize(r);
  return r;
}

IdentityReport check_fermi(Complex s, repr::FermiVariant variant) {
  IdentityReport r;
  r.id = IdentityId::fermi_ratio;
  const bool printed = variant == repr::FermiVariant::as_printed;
  r.variant = printed ? "as_printed" : "corrected";
  r.expected_to_hold = !printed;
  r.tol_rel = 1e-9;
  add_complex(r, "s", s);

  quad::QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-12;
  std::string notes;
  const EvalOutcome out = evaluate_keeping_partial(
      [&] { return repr::zeta_integral_fermi(s, cfg, variant); }, notes);
  r.lhs = out.value;
  r.rhs = reference_zeta(s);
  add_complex(r, "ratio", r.lhs / r.rhs);
  add_complex(r, "candidate", real_pow(2.0, s - 1.0));
  r.notes = out.notes + (notes.empty() ? "" : "; " + notes);
  finalize(r);
  return r;
}

IdentityReport check_ramanujan(Complex s, repr::RamanujanVariant variant) {
  IdentityReport r;
  r.id = IdentityId::ramanujan;
  const bool printed = variant == repr::RamanujanVariant::as_printed;
  r.variant = printed ? "as_printed" : "shifted_digamma";
  r.expected_to_hold = false;  // neither variant is stated unambiguously
  r.tol_rel = 1e-8;
  add_complex(r, "s", s);
  r.rhs = reference_zeta(s);

  quad::QuadConfig cfg;
  cfg.abs_tol = 1e-12;
  cfg.rel_tol = 1e-12;
  double diverged = 0.0;
  try {
    std::string notes;
    const EvalOutcome out =
        evaluate_keeping_partial([&] { return repr::zeta_ramanujan(s, cfg, variant); }, notes);
    r.lhs = out.value;
    r.parameters.push_back({"err_estimate", out.err_estimate});
    r.notes = out.notes + (notes.empty() ? "" : "; " + notes);
  } catch (const DomainError& e) {
    diverged = 1.0;
    r.lhs = 0.0;
    r.notes = std::string("divergence detected: ") + e.what();
  }
  r.parameters.push_back({"divergence_detected", diverged});
  finalize(r);
  if (diverged != 0.0) r.pass = false;
  return r;
}

}  // namespace identities
}  // namespace zeta
