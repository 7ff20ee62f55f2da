#pragma once

#include <functional>

#include "zeta/core.hpp"

namespace zeta::quad {

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_refinements = 20000;
  /// Boundary between the singular head (0, split] and the decaying tail.
  double split_point = 1.0;
  /// Largest truncation point for exponentially decaying tails.
  double tail_cutoff_guard = 800.0;

  void validate() const;
};

enum class TailKind {
  /// |f(y)| <= C y^tail_power exp(-tail_rate y) beyond the split point.
  exponential,
  /// |f(y)| = O(y^-tail_power) with tail_power > 1.
  algebraic,
};

/// A complex integrand on (0, inf) together with its declared behaviour at
/// both ends. The engine trusts the declarations for truncation and checks
/// the head empirically for growth.
struct Integrand {
  std::function<Complex(double)> f;
  /// p with |f(y)| = O(y^p) as y -> 0+; must exceed -1.
  double endpoint_exponent = 0.0;
  TailKind tail = TailKind::exponential;
  double tail_rate = 1.0;
  double tail_power = 0.0;
  /// Relative rounding error of a single evaluation beyond machine epsilon
  /// (e.g. phase error of y^(i t) for large |t log y|).
  double value_noise = 0.0;
};

/// Integral over (0, inf). Head panels use y = split * exp(-v), so the y^p
/// endpoint behaviour becomes exponential decay in v; the tail is truncated
/// from the declared decay model. Each panel carries a 15-point Kronrod
/// estimate and the embedded 7-point Gauss estimate; their difference is the
/// panel error. Panels are bisected largest-error-first until the total error
/// meets max(abs_tol, rel_tol |I|).
///
/// Throws DomainError when the head grows toward the origin on four
/// successive panels (non-integrable integrand) or when the declarations are
/// invalid, and NonConvergence when max_refinements is exhausted.
EvalOutcome integrate_zero_to_inf(const Integrand& f, const QuadConfig& cfg);

/// 2 * integrate_zero_to_inf(f) for integrands the caller asserts are even.
EvalOutcome integrate_real_line_symmetric(const Integrand& f, const QuadConfig& cfg);

/// One Gauss-Kronrod 7/15 panel on [a, b].
struct PanelEstimate {
  Complex kronrod;
  Complex gauss;
  double abs_kronrod;  // Kronrod estimate of the integral of |f|
  double max_abs;      // largest |f| seen at the nodes
};
PanelEstimate gauss_kronrod_15(const std::function<Complex(double)>& f, double a, double b);

}  // namespace zeta::quad
