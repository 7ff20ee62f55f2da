#pragma once

#include "zeta/core.hpp"

namespace zeta::special {

/// Distance below which an argument is treated as sitting on a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Complex Gamma function. Lanczos (g = 7, 9 terms) for Re z >= 1/2 and the
/// reflection formula below that. Throws PoleError near 0, -1, -2, ...
Complex gamma_complex(Complex z);

/// Principal log-Gamma, continuous on Re z > 0 (the imaginary part is not
/// reduced modulo 2*pi). Arguments with Re z <= 0 are accepted away from the
/// poles but then only exp(log_gamma(z)) is meaningful.
Complex log_gamma(Complex z);

/// Digamma for real y > 0. Throws DomainError otherwise.
double digamma_real(double y);

/// Riemann zeta through the alternating (eta) series
///   zeta(s) = -1/(1 - 2^(1-s)) * sum_{n>=1} (-1)^n n^-s,   Re s > 0, s != 1.
/// With Acceleration::alternating the sum uses the Cohen-Rodriguez Villegas-
/// Zagier weights; the number of terms is the smallest n whose certified
/// truncation bound 2 Gamma(sigma) / (|Gamma(s)| (3 + sqrt 8)^n) meets cfg.tol.
/// Acceleration::none sums plain partial sums; the remainder is bounded by
/// pairing consecutive terms.
EvalOutcome zeta_reference(Complex s, const SeriesConfig& cfg = {});

/// zeta(s) - 1 for Re s > 1, accurate in the relative sense even when the
/// result is close to 2^-s.
Complex zeta_minus_one(Complex s);

}  // namespace zeta::special
