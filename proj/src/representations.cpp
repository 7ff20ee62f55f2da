#include "zeta/representations.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "zeta/special_functions.hpp"

namespace zeta::repr {
namespace {

using special::gamma_complex;
using special::zeta_minus_one;
using LComplex = std::complex<long double>;

constexpr double kLdEps = LDBL_EPSILON;
// Keeps prefactor amplification e^((pi/2 - angle)|t|) near e^7.
constexpr double kRotationMargin = 7.0;
constexpr double kMaxAngle = 0.42 * kPi;

Complex den_2(Complex s) {
  const Complex den = 1.0 - real_pow(2.0, 1.0 - s);
  if (std::abs(den) < special::kPoleTolerance) {
    std::ostringstream msg;
    msg << "1 - 2^(1-s) = " << std::abs(den) << " at s = " << s;
    throw PoleGuard(msg.str());
  }
  return den;
}

void require_right_half_plane(Complex s, const char* who) {
  if (!(s.real() > 0.0) || !is_finite(s)) {
    throw DomainError(std::string(who) + " requires Re s > 0");
  }
  if (std::abs(s - 1.0) < special::kPoleTolerance) throw PoleError("zeta pole at s = 1");
}

// pi^(s-1) sin(pi s/2) / (1 - 2^(1-s)), shared by the sinh forms and the
// functional series.
Complex sinh_prefactor(Complex s) {
  return real_pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) / den_2(s);
}

// 2 e^-y / (1 - e^-2y) = csch y for Re y > 0.
Complex csch_right(Complex y) {
  const Complex e = std::exp(-y);
  return 2.0 * e / (1.0 - e * e);
}

// Scales a value-level config to the integral: zeta = pref * (I + offset).
QuadConfig scaled_config(const QuadConfig& cfg, double pref_abs) {
  QuadConfig q = cfg;
  q.abs_tol = 0.5 * cfg.abs_tol / pref_abs;
  return q;
}

// Runs the quadrature for zeta = pref * (I + offset) and converts the outcome
// into a value-level one. A second pass tightens the absolute tolerance when
// the relative target of the integral was looser than the value's.
EvalOutcome integrate_scaled(const quad::Integrand& f, const QuadConfig& cfg, Complex pref,
                             Complex offset, MethodTag tag, const std::string& notes) {
  cfg.validate();
  const double pref_abs = std::abs(pref);
  const auto to_value = [&](EvalOutcome q) {
    EvalOutcome out;
    out.method = tag;
    out.value = pref * (q.value + offset);
    out.err_estimate = pref_abs * q.err_estimate + 8.0 * kEps * std::abs(out.value);
    out.evals = q.evals;
    out.notes = notes + "; " + q.notes;
    return out;
  };
  const auto target = [&](const EvalOutcome& out) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
  };

  QuadConfig q = scaled_config(cfg, pref_abs);
  EvalOutcome out;
  std::int64_t evals = 0;
  for (int pass = 0; pass < 2; ++pass) {
    try {
      out = to_value(quad::integrate_zero_to_inf(f, q));
    } catch (const NonConvergence& e) {
      out = to_value(e.partial());
    }
    evals += out.evals;
    out.evals = evals;
    if (out.err_estimate <= target(out)) break;
    q.abs_tol = 0.4 * target(out) / pref_abs;
    q.rel_tol = std::min(q.rel_tol, 1e-3 * q.abs_tol / std::max(std::abs(out.value) / pref_abs, 1e-300));
    q.rel_tol = std::max(q.rel_tol, 1e-300);
  }
  out.converged = is_finite(out.value) && out.err_estimate <= target(out);
  if (!out.converged) {
    std::ostringstream msg;
    msg << to_string(tag) << ": error estimate " << out.err_estimate << " above target "
        << target(out);
    throw NonConvergence(msg.str(), out);
  }
  return out;
}

std::string angle_note(double angle) {
  std::ostringstream os;
  os << "contour angle " << angle;
  return os.str();
}

// log y - psi(1 + y), with the asymptotic form for large y to avoid
// cancellation between log y and psi.
double log_minus_shifted_digamma(double y) {
  if (y < 10.0) return std::log(y) - special::digamma_real(1.0 + y);
  const double u = 1.0 / y;
  const double u2 = u * u;
  return -0.5 * u +
         u2 * (1.0 / 12 - u2 * (1.0 / 120 - u2 * (1.0 / 252 - u2 * (1.0 / 240 - u2 / 132.0))));
}

// 2^(s - 2n) in extended precision.
LComplex two_pow_ld(Complex s, long double n2) {
  const LComplex w(static_cast<long double>(s.real()) - n2, s.imag());
  return std::exp(w * std::log(2.0L));
}

// zeta(m) - 1 for Re m > 1; beyond Re m = 60 only 2^-m survives in extended
// precision.
Complex zeta_m1_fast(Complex m) {
  if (m.real() > 60.0) return real_pow(2.0, -m) + real_pow(3.0, -m);
  return zeta_minus_one(m);
}

// Extended-precision march over G_n = Gamma(2n + 1 - s) / (2n + 1)!.
class GammaRatio {
 public:
  explicit GammaRatio(Complex s) : s_(s.real(), s.imag()), g_(gamma_complex(3.0 - s) / 6.0) {}
  // G_n for the current n, then advance.
  LComplex next() {
    const LComplex cur = g_;
    const long double n = static_cast<long double>(n_);
    g_ *= (2.0L * n + 2.0L - s_) * (2.0L * n + 1.0L - s_) / ((2.0L * n + 3.0L) * (2.0L * n + 2.0L));
    ++n_;
    return cur;
  }
  std::int64_t n() const { return n_; }

 private:
  LComplex s_;
  LComplex g_;
  std::int64_t n_ = 1;
};

// Certified bound for sum_{n>N} |(2 - 2^(s-2n)) G_n zeta(2n+1-s)|, using
// |G_n| <= (2n)^(-1-sigma) for large n and summing against the integral.
double raw_tail_bound(double sigma, std::int64_t n_terms) {
  const double n = static_cast<double>(std::max<std::int64_t>(n_terms, 1));
  const double zeta_max = 1.0 + zeta_minus_one(Complex(2.0 * n + 1.0 - sigma, 0.0)).real();
  return (1.0 + std::pow(2.0, sigma - 2.0 * n - 1.0)) * zeta_max * std::pow(2.0 * n, -sigma) / sigma;
}

}  // namespace

// ---------------------------------------------------------------------------

StripPoint::StripPoint(Complex s) : s_(s) {
  if (!is_finite(s)) throw DomainError("s must be finite");
  if (std::abs(s - 1.0) <= 1e-8) throw PoleError("s within 1e-8 of the pole at 1");
  if (!(s.real() > 0.0 && s.real() < 2.0)) throw DomainError("strip point requires 0 < Re s < 2");
  if (s.real() == 1.0 && s.imag() == 0.0) throw DomainError("Re s = 1 requires Im s != 0");
}

Complex sinh_quotient(Complex y) {
  if (y.real() < 0.0) y = -y;  // even function
  const Complex y2 = y * y;
  if (std::abs(y) < 0.1) {
    return 1.0 / 6 +
           y2 * (-7.0 / 360 +
                 y2 * (31.0 / 15120 +
                       y2 * (-127.0 / 604800 +
                             y2 * (73.0 / 3421440 +
                                   y2 * (-1414477.0 / 653837184000 + y2 * (8191.0 / 37362124800))))));
  }
  const Complex ratio = y.real() > 20.0 ? y * csch_right(y) : y / std::sinh(y);
  return (1.0 - ratio) / y2;
}

double contour_angle(double t) {
  const double a = std::clamp(0.5 * kPi - kRotationMargin / std::max(std::abs(t), 1e-300), 0.0,
                              kMaxAngle);
  return t >= 0.0 ? a : -a;
}

EvalOutcome zeta_integral_new(const StripPoint& p, const QuadConfig& cfg) {
  const Complex s = p.s();
  const Complex pref = sinh_prefactor(s);
  const double phi = contour_angle(s.imag());
  const Complex w = std::polar(1.0, -phi);
  const double split = cfg.split_point;

  // Head: y^(1-s) q(y). Tail: y^(-s-1) minus its analytic part, -y^(-s) csch y.
  quad::Integrand f;
  f.f = [=](double r) -> Complex {
    const Complex y = r * w;
    const Complex ly = std::log(y);
    if (r <= split) return w * std::exp((1.0 - s) * ly) * sinh_quotient(y);
    return -w * std::exp(-s * ly) * csch_right(y);
  };
  f.endpoint_exponent = 1.0 - s.real();
  f.tail = quad::TailKind::exponential;
  f.tail_rate = std::cos(phi);
  f.tail_power = -s.real();
  f.value_noise = 4.0 * kEps * std::abs(s);
  const Complex offset = std::exp(-s * std::log(split * w)) / s;
  return integrate_scaled(f, cfg, pref, offset, MethodTag::integral_new_y,
                          "y-form with analytic tail y^(-s-1); " + angle_note(phi));
}

EvalOutcome zeta_integral_new_x(const StripPoint& p, const QuadConfig& cfg) {
  const Complex s = p.s();
  const Complex pref = 2.0 * std::sin(0.5 * kPi * s) / den_2(s);
  const double phi = contour_angle(s.imag());
  const Complex w = std::polar(1.0, -0.5 * phi);
  const double split = cfg.split_point;

  quad::Integrand f;
  f.f = [=](double r) -> Complex {
    const Complex x = r * w;
    const Complex lx = std::log(x);
    const Complex u = kPi * x * x;
    if (r <= split) return w * kPi * std::exp((3.0 - 2.0 * s) * lx) * sinh_quotient(u);
    return -w * std::exp((1.0 - 2.0 * s) * lx) * csch_right(u);
  };
  f.endpoint_exponent = 3.0 - 2.0 * s.real();
  f.tail = quad::TailKind::exponential;
  f.tail_rate = kPi * split * std::cos(phi);
  f.tail_power = 1.0 - 2.0 * s.real();
  f.value_noise = 8.0 * kEps * std::abs(s);
  const Complex offset = std::exp(-2.0 * s * std::log(split * w)) / (2.0 * kPi * s);
  return integrate_scaled(f, cfg, pref, offset, MethodTag::integral_new_x,
                          "x-form with hyperbolic cosecant; " + angle_note(0.5 * phi));
}

EvalOutcome zeta_integral_exp(Complex s, const QuadConfig& cfg) {
  require_right_half_plane(s, "zeta_integral_exp");
  const Complex pref = real_pow(2.0, s - 1.0) / (den_2(s) * gamma_complex(s));
  const double phi = contour_angle(s.imag());
  const Complex w = std::polar(1.0, phi);

  quad::Integrand f;
  f.f = [=](double r) -> Complex {
    const Complex y = r * w;
    const Complex e2 = std::exp(-2.0 * y);
    return w * std::exp((s - 1.0) * std::log(y)) * 2.0 * e2 / (1.0 + e2);
  };
  f.endpoint_exponent = s.real() - 1.0;
  f.tail = quad::TailKind::exponential;
  f.tail_rate = 2.0 * std::cos(phi);
  f.tail_power = s.real() - 1.0;
  f.value_noise = 4.0 * kEps * std::abs(s);
  return integrate_scaled(f, cfg, pref, 0.0, MethodTag::integral_exp, angle_note(phi));
}

EvalOutcome zeta_integral_fermi(Complex s, const QuadConfig& cfg, FermiVariant variant) {
  require_right_half_plane(s, "zeta_integral_fermi");
  const Complex printed = real_pow(2.0, s - 1.0) / (den_2(s) * gamma_complex(s));
  // Calibrated against the reference: as_printed / zeta = 2^(s-1).
  const Complex calibration = real_pow(2.0, 1.0 - s);
  const bool as_printed = variant == FermiVariant::as_printed;
  const Complex pref = as_printed ? printed : printed * calibration;
  const double phi = contour_angle(s.imag());
  const Complex w = std::polar(1.0, phi);

  quad::Integrand f;
  f.f = [=](double r) -> Complex {
    const Complex y = r * w;
    const Complex e = std::exp(-y);
    return w * std::exp((s - 1.0) * std::log(y)) * e / (1.0 + e);
  };
  f.endpoint_exponent = s.real() - 1.0;
  f.tail = quad::TailKind::exponential;
  f.tail_rate = std::cos(phi);
  f.tail_power = s.real() - 1.0;
  f.value_noise = 4.0 * kEps * std::abs(s);
  std::ostringstream notes;
  if (as_printed) {
    notes << "as printed: prefactor 2^(s-1) / ((1 - 2^(1-s)) Gamma(s))";
  } else {
    notes << "corrected: printed prefactor times calibration factor 2^(1-s) = "
          << calibration.real() << (calibration.imag() < 0 ? "" : "+") << calibration.imag() << "i";
  }
  notes << "; " << angle_note(phi);
  return integrate_scaled(f, cfg, pref, 0.0, MethodTag::integral_fermi, notes.str());
}

EvalOutcome zeta_ramanujan(Complex s, const QuadConfig& cfg, RamanujanVariant variant) {
  if (!(s.real() >= 0.0 && s.real() < 1.0) || !is_finite(s)) {
    throw DomainError("zeta_ramanujan requires 0 <= Re s < 1");
  }
  const Complex pref = std::sin(kPi * s) / kPi;
  if (std::abs(pref) < special::kPoleTolerance) {
    throw PoleGuard("sin(pi s) vanishes; the integral cannot recover zeta here");
  }
  const bool shifted = variant == RamanujanVariant::shifted_digamma;

  // Real axis only: digamma is evaluated for real arguments.
  quad::Integrand f;
  f.f = [=](double y) -> Complex {
    double g = log_minus_shifted_digamma(y);
    if (!shifted) g += 1.0 / y;  // psi(y) = psi(1 + y) - 1/y
    return std::exp(-s * std::log(y)) * g;
  };
  f.endpoint_exponent = -s.real();
  f.tail = quad::TailKind::algebraic;
  f.tail_power = 1.0 + s.real();
  f.value_noise = 4.0 * kEps * std::abs(s);
  return integrate_scaled(f, cfg, pref, 0.0, MethodTag::ramanujan,
                          shifted ? "shifted digamma psi(1 + y)" : "as printed psi(y)");
}

// ---------------------------------------------------------------------------

Complex functional_series_term(int n, Complex s) {
  if (n < 1) throw DomainError("functional_series_term requires n >= 1");
  const Complex m = 2.0 * n + 1.0 - s;
  const Complex g = std::exp(special::log_gamma(m) - std::lgamma(2.0 * n + 2.0));
  return (2.0 - real_pow(2.0, s - 2.0 * n)) * g * (1.0 + zeta_minus_one(m));
}

std::vector<Complex> gamma_sum_partials(Complex s, const std::vector<std::int64_t>& checkpoints) {
  std::vector<Complex> out;
  out.reserve(checkpoints.size());
  GammaRatio g(s);
  LComplex sum = 0.0L;
  for (std::int64_t cp : checkpoints) {
    while (g.n() <= cp) {
      const long double n2 = 2.0L * static_cast<long double>(g.n());
      const LComplex coef = 2.0L - two_pow_ld(s, n2);
      sum += coef * g.next();
    }
    out.emplace_back(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  }
  return out;
}

std::pair<Complex, double> richardson_doubling(const std::vector<Complex>& sums, Complex exponent) {
  if (sums.empty()) throw DomainError("richardson_doubling needs at least one sum");
  std::vector<std::vector<Complex>> r(sums.size());
  for (std::size_t j = 0; j < sums.size(); ++j) {
    r[j].push_back(sums[j]);
    for (std::size_t k = 1; k <= j; ++k) {
      const Complex f = real_pow(2.0, -(exponent + static_cast<double>(k - 1)));
      r[j].push_back((r[j][k - 1] - f * r[j - 1][k - 1]) / (1.0 - f));
    }
  }
  const std::size_t j = sums.size() - 1;
  if (j == 0) return {sums[0], std::abs(sums[0])};
  const Complex best = r[j][j];
  const double diff = std::max(std::abs(best - r[j][j - 1]), std::abs(best - r[j - 1][j - 1]));
  return {best, diff};
}

EvalOutcome zeta_functional_series(const StripPoint& p, const SeriesConfig& cfg) {
  cfg.validate();
  const Complex s = p.s();
  const double sigma = s.real();
  const Complex pref = sinh_prefactor(s);
  const double pref_abs = std::abs(pref);

  EvalOutcome out;
  out.method = MethodTag::functional_series;

  // Terms in extended precision: the sum cancels down by e^(-pi |t| / 2).
  GammaRatio g(s);
  LComplex sum = 0.0L;
  long double abs_sum = 0.0L;
  const auto advance_to = [&](std::int64_t n_max) {
    while (g.n() <= n_max) {
      const long double n2 = 2.0L * static_cast<long double>(g.n());
      const Complex m(static_cast<double>(n2 + 1.0L) - sigma, -s.imag());
      const Complex zm1 = zeta_m1_fast(m);
      const LComplex z(1.0L + zm1.real(), zm1.imag());
      const LComplex term = (2.0L - two_pow_ld(s, n2)) * g.next() * z;
      sum += term;
      abs_sum += std::abs(term);
    }
    return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  };
  const auto rounding = [&](Complex partial) {
    return pref_abs * (64.0 * kLdEps * static_cast<double>(abs_sum) + 4e-15 * std::abs(partial));
  };

  const std::int64_t budget = cfg.max_terms;
  std::int64_t n0 = std::min<std::int64_t>(128, budget / 4);
  const bool extrapolate = cfg.acceleration != Acceleration::none &&
                           static_cast<double>(n0) >= 2.0 * std::abs(s) + 16.0;

  if (extrapolate) {
    std::vector<Complex> sums;
    Complex best = 0.0;
    double diff = 0.0;
    for (std::int64_t n = n0; n <= budget && sums.size() < 12; n *= 2) {
      sums.push_back(advance_to(n));
      out.evals = n;
      if (sums.size() < 3) continue;
      std::tie(best, diff) = richardson_doubling(sums, s);
      out.value = pref * best;
      out.err_estimate = pref_abs * diff + rounding(best) + 8.0 * kEps * std::abs(out.value);
      if (out.err_estimate <= 0.5 * cfg.tol) break;
    }
    std::ostringstream notes;
    notes << "Richardson extrapolation over " << sums.size() << " doubling levels from N0 = " << n0;
    out.notes = notes.str();
  } else {
    // Smallest N whose certified tail bound meets the tolerance.
    std::int64_t n_terms = budget;
    const double target = 0.5 * cfg.tol / pref_abs;
    const double guess = 0.5 * std::pow(2.0 / (sigma * target), 1.0 / sigma);
    if (guess < static_cast<double>(budget)) {
      n_terms = std::max<std::int64_t>(1, static_cast<std::int64_t>(guess));
      while (n_terms > 1 && raw_tail_bound(sigma, n_terms - 1) <= target) --n_terms;
      while (n_terms < budget && raw_tail_bound(sigma, n_terms) > target) ++n_terms;
    }
    const Complex partial = advance_to(n_terms);
    out.evals = n_terms;
    out.value = pref * partial;
    out.err_estimate = pref_abs * raw_tail_bound(sigma, n_terms) + rounding(partial) +
                       8.0 * kEps * std::abs(out.value);
    out.notes = "partial sums with integral tail bound";
  }

  out.converged = is_finite(out.value) && out.err_estimate <= cfg.tol;
  if (!out.converged) {
    std::ostringstream msg;
    msg << "functional_series: error estimate " << out.err_estimate << " above tol " << cfg.tol
        << " after " << out.evals << " terms";
    throw NonConvergence(msg.str(), out);
  }
  return out;
}

Complex gamma_sum_closed_form(Complex s, ClosedFormVariant variant) {
  const double sign = variant == ClosedFormVariant::as_printed ? 1.0 : -1.0;
  const Complex bracket =
      -1.0 + real_pow(3.0, s) + sign * s * (real_pow(2.0, s) - 2.0);
  const Complex first = bracket * gamma_complex(-s);
  const Complex second = std::sqrt(kPi) * gamma_complex(1.0 - s) * gamma_complex(s) /
                         (gamma_complex(1.0 + 0.5 * s) * gamma_complex(0.5 * (1.0 + s)));
  return first + second;
}

EvalOutcome zeta_functional_series_accel(const StripPoint& p, const SeriesConfig& cfg,
                                         ClosedFormVariant variant) {
  cfg.validate();
  const Complex s = p.s();
  const double sigma = s.real();
  const Complex pref = sinh_prefactor(s);
  const double pref_abs = std::abs(pref);

  const Complex closed = gamma_sum_closed_form(s, variant);
  // Rounding of the two closed-form pieces, each built from four or five
  // Gamma values.
  const double closed_err =
      1e-13 * (std::abs(gamma_complex(-s)) * (1.0 + std::abs(real_pow(3.0, s)) +
                                              std::abs(s) * (2.0 + std::abs(real_pow(2.0, s)))) +
               std::abs(closed));

  // b_n dominates the n-th term; b_{n+1} <= b_n / 4, so the tail after N is
  // at most (4/3) b_{N+1}.
  const auto term_bound = [&](std::int64_t n) {
    const double m = 2.0 * static_cast<double>(n) + 1.0 - sigma;
    const double ghat = std::exp(std::lgamma(m) - std::lgamma(2.0 * static_cast<double>(n) + 2.0));
    const double zm1 = zeta_m1_fast(Complex(m, 0.0)).real();
    return (2.0 + std::pow(2.0, sigma - 2.0 * static_cast<double>(n))) * ghat * zm1;
  };

  EvalOutcome out;
  out.method = MethodTag::functional_series_accel;
  GammaRatio g(s);
  LComplex sum = 0.0L;
  long double abs_sum = 0.0L;
  double tail = term_bound(1) * 4.0 / 3.0;
  std::int64_t n_used = 0;
  const double target = 0.5 * cfg.tol / pref_abs;
  while (n_used < cfg.max_terms && tail > target) {
    const long double n2 = 2.0L * static_cast<long double>(g.n());
    const Complex m(static_cast<double>(n2 + 1.0L) - sigma, -s.imag());
    const Complex zm1 = zeta_m1_fast(m);
    const LComplex term = (2.0L - two_pow_ld(s, n2)) * g.next() * LComplex(zm1.real(), zm1.imag());
    sum += term;
    abs_sum += std::abs(term);
    ++n_used;
    tail = term_bound(n_used + 1) * 4.0 / 3.0;
  }
  const Complex series(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  out.evals = n_used;
  out.value = pref * (series + closed);
  const double rounding = 64.0 * kLdEps * static_cast<double>(abs_sum) +
                          4.0 * kEps * static_cast<double>(abs_sum);
  out.err_estimate = pref_abs * (tail + rounding + closed_err) + 8.0 * kEps * std::abs(out.value);
  out.notes = variant == ClosedFormVariant::corrected
                  ? "closed-form Gamma sum with corrected sign of s(2^s - 2)"
                  : "closed-form Gamma sum as printed";
  out.converged = is_finite(out.value) && out.err_estimate <= cfg.tol;
  if (!out.converged) {
    std::ostringstream msg;
    msg << "functional_series_accel: error estimate " << out.err_estimate << " above tol "
        << cfg.tol << " after " << out.evals << " terms";
    throw NonConvergence(msg.str(), out);
  }
  return out;
}

}  // namespace zeta::repr
