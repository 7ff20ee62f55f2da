#pragma once

#include "zeta/core.hpp"
#include "zeta/quadrature.hpp"

namespace zeta::repr {

using quad::QuadConfig;

/// A point of the strip 0 < Re s < 2 where the sinh representation is valid.
class StripPoint {
 public:
  /// Throws DomainError outside 0 < Re s < 2 or at s = 1 + 0i on the line
  /// Re s = 1, and PoleError within 1e-8 of s = 1.
  explicit StripPoint(Complex s);
  Complex s() const noexcept { return s_; }

 private:
  Complex s_;
};

enum class FermiVariant { as_printed, corrected };
enum class RamanujanVariant { as_printed, shifted_digamma };
/// as_printed: [-1 + 3^s + s(2^s - 2)] Gamma(-s) + ...; corrected flips the
/// sign of the s(2^s - 2) term.
enum class ClosedFormVariant { as_printed, corrected };

// ---------------------------------------------------------------------------
// Integral representations. Tolerances in QuadConfig apply to the final zeta
// value; the integrals are solved to the correspondingly scaled tolerance.
// Complex s off the real axis is integrated along the ray arg y = -theta(t)
// (or +theta for the Gamma-normalised forms), which leaves the value unchanged
// and removes the e^(pi |t| / 2) cancellation of the real-axis integral.

/// pi^(s-1) sin(pi s / 2) / (1 - 2^(1-s)) * int_0^inf y^(-s-1) (1 - y / sinh y) dy
EvalOutcome zeta_integral_new(const StripPoint& p, const QuadConfig& cfg = {});

/// 2 sin(pi s / 2) / (1 - 2^(1-s)) * int_0^inf x^(-2s) / (pi x) (1 - pi x^2 csch(pi x^2)) dx
EvalOutcome zeta_integral_new_x(const StripPoint& p, const QuadConfig& cfg = {});

/// 2^(s-1) / ((1 - 2^(1-s)) Gamma(s)) * int_0^inf y^(s-1) e^-y / cosh y dy
EvalOutcome zeta_integral_exp(Complex s, const QuadConfig& cfg = {});

/// Fermi-Dirac form int_0^inf y^(s-1) / (e^y + 1) dy with the printed prefactor
/// 2^(s-1) / ((1 - 2^(1-s)) Gamma(s)), or the calibrated prefactor
/// 1 / ((1 - 2^(1-s)) Gamma(s)).
EvalOutcome zeta_integral_fermi(Complex s, const QuadConfig& cfg, FermiVariant variant);

/// sin(pi s) / pi * int_0^inf y^-s (log y - psi(y)) dy, or with psi(1 + y).
/// The printed form is not integrable at the origin and raises DomainError.
EvalOutcome zeta_ramanujan(Complex s, const QuadConfig& cfg, RamanujanVariant variant);

// ---------------------------------------------------------------------------
// Series representations

/// One term (2 - 2^(s-2n)) / (2n+1)! Gamma(2n-s+1) zeta(2n-s+1), through
/// log_gamma and the reference zeta.
Complex functional_series_term(int n, Complex s);

/// pi^(s-1) sin(pi s/2) / (1 - 2^(1-s)) * sum_n (2 - 2^(s-2n)) / (2n+1)! Gamma(2n-s+1) zeta(2n-s+1).
/// Acceleration::none sums until the certified tail bound meets cfg.tol;
/// Acceleration::extrapolation applies Richardson extrapolation in N to
/// partial sums at N0, 2 N0, 4 N0, ...
EvalOutcome zeta_functional_series(const StripPoint& p, const SeriesConfig& cfg);

/// sum_{n>=1} (2 - 2^(s-2n)) / (2n+1)! Gamma(2n-s+1) in closed form.
Complex gamma_sum_closed_form(Complex s, ClosedFormVariant variant = ClosedFormVariant::as_printed);

/// The functional identity with zeta(2n-s+1) - 1 in the series and the Gamma
/// sum in closed form. The tail is bounded geometrically.
EvalOutcome zeta_functional_series_accel(const StripPoint& p, const SeriesConfig& cfg,
                                         ClosedFormVariant variant = ClosedFormVariant::corrected);

// ---------------------------------------------------------------------------
// Building blocks shared with the identity checks

/// (1 - y / sinh y) / y^2, Taylor expansion for |y| < 0.1.
Complex sinh_quotient(Complex y);

/// Contour angle used for Im s = t; zero for |t| below about 4.5.
double contour_angle(double t);

/// Raw partial sums of sum_n (2 - 2^(s-2n)) Gamma(2n-s+1) / (2n+1)!, accumulated
/// in extended precision. Returns the sums after each N in `checkpoints`
/// (strictly increasing).
std::vector<Complex> gamma_sum_partials(Complex s, const std::vector<std::int64_t>& checkpoints);

/// Richardson extrapolation of partial sums S_{N0 2^j} whose remainder behaves
/// like N^-exponent (c0 + c1 / N + ...). Returns the estimate and the
/// difference between the two highest orders.
std::pair<Complex, double> richardson_doubling(const std::vector<Complex>& sums, Complex exponent);

}  // namespace zeta::repr
