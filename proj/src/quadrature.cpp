#include "zeta/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

namespace zeta::quad {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kPanelWidth = 1.0;  // in the logarithmic coordinate
constexpr double kMaxLogExtent = 700.0;
constexpr int kGrowthPanels = 4;

enum class Segment { head, tail_linear, tail_log };

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double result() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Panel {
  Segment segment;
  double a;
  double b;
  Complex value;
  double abs_value;
  double err;
};

class Engine {
 public:
  Engine(const Integrand& f, const QuadConfig& cfg) : f_(f), cfg_(cfg) {}

  EvalOutcome run();

 private:
  // Integrand in the coordinate of a segment, including the Jacobian.
  Complex eval(Segment seg, double x) const {
    const double split = cfg_.split_point;
    switch (seg) {
      case Segment::head: {
        const double y = split * std::exp(-x);
        return f_.f(y) * y;
      }
      case Segment::tail_log: {
        const double y = split * std::exp(x);
        return f_.f(y) * y;
      }
      case Segment::tail_linear:
        return f_.f(x);
    }
    return 0.0;
  }

  Panel make_panel(Segment seg, double a, double b) {
    const auto est = gauss_kronrod_15([&](double x) { return eval(seg, x); }, a, b);
    evals_ += 15;
    return {seg, a, b, est.kronrod, est.abs_kronrod, std::abs(est.kronrod - est.gauss)};
  }

  double running_target() const {
    return std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(partial_));
  }

  void march_log(Segment seg, double decay_rate);
  void march_linear();

  const Integrand& f_;
  const QuadConfig& cfg_;
  std::vector<Panel> panels_;
  double truncation_ = 0.0;
  Complex partial_ = 0.0;
  std::int64_t evals_ = 0;
};

// Geometric panels in a logarithmic coordinate, marching away from the split
// point until the declared decay rate bounds the remainder.
void Engine::march_log(Segment seg, double decay_rate) {
  const double declared_ratio = std::exp(-decay_rate * kPanelWidth);
  double prev_abs = -1.0;
  int growth_run = 0;
  int near_flat_run = 0;
  for (double v = 0.0;; v += kPanelWidth) {
    const double end = v + kPanelWidth;
    Panel p = make_panel(seg, v, end);
    partial_ += p.value;
    panels_.push_back(p);

    if (prev_abs >= 0.0) {
      const double ratio = prev_abs > 0.0 ? p.abs_value / prev_abs : 0.0;
      // Growth faster than any logarithmic factor means y^p with p <= -1.
      growth_run = ratio >= 1.0 + kPanelWidth / end ? growth_run + 1 : 0;
      near_flat_run = ratio >= 1.0 - 1e-12 ? near_flat_run + 1 : 0;
      if (growth_run >= kGrowthPanels) {
        std::ostringstream msg;
        msg << "integrand grows toward the "
            << (seg == Segment::head ? "origin" : "upper limit") << " over " << kGrowthPanels
            << " successive panels (empirical exponent contradicts the declared "
            << (seg == Segment::head ? "endpoint exponent" : "tail power") << ")";
        throw DomainError(msg.str());
      }
      if (p.abs_value == 0.0 && prev_abs == 0.0) return;
      if (ratio < 1.0) {
        const double rho = std::max(declared_ratio, ratio);
        const double remainder = p.abs_value * rho / (1.0 - rho);
        if (remainder <= 0.1 * running_target()) {
          truncation_ += remainder;
          return;
        }
      }
    }
    prev_abs = p.abs_value;

    if (end >= kMaxLogExtent) {
      if (near_flat_run >= kGrowthPanels) {
        throw DomainError("integrand does not decay in the logarithmic coordinate");
      }
      truncation_ += p.abs_value / std::max(1.0 - declared_ratio, 1e-3);
      return;
    }
  }
}

// Linear panels on [split, T] for exponentially decaying tails. T is the first
// panel end whose fitted envelope bound C T^m e^(-rate T) / rate' meets the
// target, capped at tail_cutoff_guard.
void Engine::march_linear() {
  const double rate = f_.tail_rate;
  const double power = f_.tail_power;
  const double width = std::max(kPanelWidth, 2.0 / rate);
  for (double a = cfg_.split_point;; a += width) {
    const double b = std::min(a + width, cfg_.tail_cutoff_guard);
    Panel p = make_panel(Segment::tail_linear, a, b);
    partial_ += p.value;
    panels_.push_back(p);

    // Envelope constant fitted at three points of the panel.
    double log_c = -std::numeric_limits<double>::infinity();
    for (double y : {a, 0.5 * (a + b), b}) {
      const double mag = std::abs(f_.f(y));
      ++evals_;
      if (mag > 0.0) log_c = std::max(log_c, std::log(mag) - power * std::log(y) + rate * y);
    }
    double bound = 0.0;
    if (std::isfinite(log_c)) {
      const double effective = rate - std::max(power, 0.0) / b;
      bound = effective > 0.0
                  ? std::exp(log_c + power * std::log(b) - rate * b) / effective
                  : std::numeric_limits<double>::infinity();
    }
    if (bound <= 0.1 * running_target() || b >= cfg_.tail_cutoff_guard) {
      truncation_ += bound;
      return;
    }
  }
}

EvalOutcome Engine::run() {
  if (!f_.f) throw DomainError("integrand has no evaluation function");
  if (!(f_.endpoint_exponent > -1.0)) {
    throw DomainError("declared endpoint exponent must exceed -1");
  }
  if (f_.tail == TailKind::algebraic) {
    if (!(f_.tail_power > 1.0)) throw DomainError("algebraic tail power must exceed 1");
    march_log(Segment::tail_log, f_.tail_power - 1.0);
  } else {
    if (!(f_.tail_rate > 0.0)) throw DomainError("exponential tail rate must be positive");
    march_linear();
  }
  march_log(Segment::head, f_.endpoint_exponent + 1.0);

  const double noise = 50.0 * kEps + f_.value_noise;
  auto totals = [&] {
    NeumaierSum re;
    NeumaierSum im;
    double err = 0.0;
    double abs_sum = 0.0;
    for (const Panel& p : panels_) {
      re.add(p.value.real());
      im.add(p.value.imag());
      err += p.err;
      abs_sum += p.abs_value;
    }
    return std::tuple{Complex(re.result(), im.result()), err, abs_sum};
  };

  int refinements = 0;
  auto [value, panel_err, abs_sum] = totals();
  for (;;) {
    const double floor = noise * abs_sum;
    const double target = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(value));
    if (panel_err + truncation_ + floor <= target) break;
    if (panel_err <= 0.1 * floor) break;  // rounding-limited
    if (refinements >= cfg_.max_refinements) break;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels_.size(); ++i) {
      if (panels_[i].err > panels_[worst].err) worst = i;
    }
    const Panel old = panels_[worst];
    const double mid = 0.5 * (old.a + old.b);
    panels_[worst] = make_panel(old.segment, old.a, mid);
    panels_.insert(panels_.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                   make_panel(old.segment, mid, old.b));
    ++refinements;
    std::tie(value, panel_err, abs_sum) = totals();
  }

  EvalOutcome out;
  out.method = MethodTag::quadrature;
  out.value = value;
  out.err_estimate = panel_err + truncation_ + noise * abs_sum;
  out.evals = evals_;
  std::ostringstream notes;
  notes << panels_.size() << " panels, " << refinements << " refinements";
  out.notes = notes.str();
  const double target = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(value));
  out.converged = is_finite(value) && out.err_estimate <= target;
  if (!out.converged) {
    std::ostringstream msg;
    msg << "quadrature: error estimate " << out.err_estimate << " above target " << target
        << " (" << out.notes << ")";
    throw NonConvergence(msg.str(), out);
  }
  return out;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw UsageError("QuadConfig tolerances must be > 0");
  if (max_refinements < 1) throw UsageError("QuadConfig.max_refinements must be >= 1");
  if (!(split_point > 0.0) || !(split_point < tail_cutoff_guard)) {
    throw UsageError("QuadConfig requires 0 < split_point < tail_cutoff_guard");
  }
}

PanelEstimate gauss_kronrod_15(const std::function<Complex(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelEstimate est{};
  const Complex fc = f(center);
  est.kronrod = fc * kWgk[7];
  est.gauss = fc * kWg[3];
  est.abs_kronrod = std::abs(fc) * kWgk[7];
  est.max_abs = std::abs(fc);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex f1 = f(center - dx);
    const Complex f2 = f(center + dx);
    est.kronrod += (f1 + f2) * kWgk[j];
    est.abs_kronrod += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    est.max_abs = std::max({est.max_abs, std::abs(f1), std::abs(f2)});
    if (j % 2 == 1) est.gauss += (f1 + f2) * kWg[j / 2];
  }
  est.kronrod *= half;
  est.gauss *= half;
  est.abs_kronrod *= half;
  return est;
}

EvalOutcome integrate_zero_to_inf(const Integrand& f, const QuadConfig& cfg) {
  cfg.validate();
  Engine engine(f, cfg);
  return engine.run();
}

EvalOutcome integrate_real_line_symmetric(const Integrand& f, const QuadConfig& cfg) {
  QuadConfig half = cfg;
  half.abs_tol = 0.5 * cfg.abs_tol;
  try {
    EvalOutcome out = integrate_zero_to_inf(f, half);
    out.value *= 2.0;
    out.err_estimate *= 2.0;
    return out;
  } catch (const NonConvergence& e) {
    EvalOutcome partial = e.partial();
    partial.value *= 2.0;
    partial.err_estimate *= 2.0;
    throw NonConvergence(e.what(), partial);
  }
}

}  // namespace zeta::quad
