#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zeta {

/// The universal scalar: a complex number held as two doubles.
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr double kEps = 2.220446049250313e-16;

/// base^w on the principal branch for a positive real base.
inline Complex real_pow(double base, Complex w) { return std::exp(w * std::log(base)); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or within the pole tolerance of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument is outside the supported domain, or an integrand is not integrable.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The prefactor 1 - 2^(1-s) vanishes; the representation cannot be used here.
class PoleGuard : public Error {
 public:
  using Error::Error;
};

/// Bad user input (CLI flags, config files, parameter files).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Z(t) had an imaginary part above the allowed noise level.
class NoisyZ : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Evaluation outcomes

enum class MethodTag {
  eta_reference,
  integral_new_y,
  integral_new_x,
  integral_exp,
  integral_fermi,
  ramanujan,
  functional_series,
  functional_series_accel,
  quadrature,  // raw integrals returned by the quadrature engine
  series,      // auxiliary series (gamma sums, moments)
};

std::string_view to_string(MethodTag tag);
/// Throws UsageError for unknown names.
MethodTag method_from_string(std::string_view name);

struct EvalOutcome {
  Complex value{};
  double err_estimate = 0.0;
  std::int64_t evals = 0;
  MethodTag method = MethodTag::eta_reference;
  bool converged = false;
  std::string notes;
};

/// Budget was exhausted before the requested tolerance was met. Carries the
/// best available (non-converged) outcome.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, EvalOutcome partial)
      : Error(what), partial_(std::move(partial)) {}
  const EvalOutcome& partial() const noexcept { return partial_; }

 private:
  EvalOutcome partial_;
};

enum class Acceleration {
  none,
  alternating,    // binomial-weighted acceleration of alternating series
  extrapolation,  // Richardson extrapolation of partial sums
};

std::string_view to_string(Acceleration a);
Acceleration acceleration_from_string(std::string_view name);

struct SeriesConfig {
  std::int64_t max_terms = 100000;
  double tol = 1e-12;
  Acceleration acceleration = Acceleration::alternating;

  /// Throws UsageError if max_terms < 1 or tol <= 0.
  void validate() const;
};

}  // namespace zeta
