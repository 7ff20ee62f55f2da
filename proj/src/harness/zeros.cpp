#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "zeta/harness.hpp"
#include "zeta/special_functions.hpp"

namespace zeta::harness {

double riemann_siegel_theta(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("riemann_siegel_theta requires t > 0");
  return special::log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

Complex z_function(double t, MethodTag method, const quad::QuadConfig& quad,
                   const SeriesConfig& series) {
  const Complex s(0.5, t);
  Complex zeta;
  try {
    zeta = evaluate(method, s, quad, series).value;
  } catch (const NonConvergence& e) {
    zeta = e.partial().value;  // the noise check below catches garbage
  }
  return std::polar(1.0, riemann_siegel_theta(t)) * zeta;
}

namespace {

double checked_real_z(double t, MethodTag method, const ZeroScanConfig& cfg) {
  const Complex z = z_function(t, method, cfg.quad, cfg.series);
  if (!(std::abs(z.imag()) <= cfg.noise_limit) || !std::isfinite(z.real())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|Im Z(" << t << ")| = " << std::abs(z.imag()) << " exceeds " << cfg.noise_limit
        << " with method " << to_string(method);
    throw NoisyZ(msg.str());
  }
  return z.real();
}

}  // namespace

std::vector<ZeroBracket> scan_zeros(double t_min, double t_max, double step, MethodTag method,
                                    const ZeroScanConfig& cfg) {
  if (!(t_min > 0.0) || !(t_min < t_max) || !(t_max <= 60.0)) {
    throw UsageError("scan_zeros requires 0 < t_min < t_max <= 60");
  }
  if (!(step > 0.0)) throw UsageError("scan_zeros requires step > 0");
  if (std::find(zeta_methods().begin(), zeta_methods().end(), method) == zeta_methods().end()) {
    throw UsageError("method " + std::string(to_string(method)) + " does not evaluate zeta");
  }

  std::vector<double> ts;
  const auto count = static_cast<std::int64_t>(std::floor((t_max - t_min) / step + 1e-9));
  for (std::int64_t k = 0; k <= count; ++k) ts.push_back(t_min + static_cast<double>(k) * step);
  if (t_max - ts.back() > 1e-9 * step) ts.push_back(t_max);

  std::vector<double> zs(ts.size());
  detail::parallel_for(ts.size(), [&](std::size_t i) { zs[i] = checked_real_z(ts[i], method, cfg); });

  std::vector<ZeroBracket> brackets;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if ((zs[i] < 0.0 && zs[i + 1] > 0.0) || (zs[i] > 0.0 && zs[i + 1] < 0.0)) {
      brackets.push_back({ts[i], ts[i + 1], zs[i], zs[i + 1], 0.0, 0.0});
    }
  }
  detail::parallel_for(brackets.size(), [&](std::size_t i) {
    ZeroBracket& b = brackets[i];
    double lo = b.t_lo;
    double hi = b.t_hi;
    double z_lo = b.z_lo;
    while (hi - lo > cfg.bracket_width) {
      const double mid = 0.5 * (lo + hi);
      const double z_mid = checked_real_z(mid, method, cfg);
      if (z_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((z_mid < 0.0) == (z_lo < 0.0)) {
        lo = mid;
        z_lo = z_mid;
      } else {
        hi = mid;
      }
    }
    b.refined_t = 0.5 * (lo + hi);
    b.residual = std::abs(z_function(b.refined_t, method, cfg.quad, cfg.series));
  });
  return brackets;
}

}  // namespace zeta::harness
