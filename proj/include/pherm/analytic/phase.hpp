#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace pherm {

/// Critical values of t at fixed lambda.
struct CriticalCurves {
  double lambda = 0.0;
  double t_cr = 0.0;  ///< complex domain touches the real axis away from the origin
  double t_c = 0.0;   ///< complex domain touches the real axis at the origin
  std::optional<double> t_r;  ///< three real intervals merge; only for 1/9 < lambda < 8/9
  double delta_lambda = 0.0;
  double xi_lambda = 0.0;
};

inline CriticalCurves critical_curves(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("critical_curves: lambda must lie in (0, 1)");
  CriticalCurves c;
  c.lambda = lambda;
  c.t_cr = lambda / (lambda - 1.0);
  c.t_c = (lambda - 1.0) / lambda;
  const double a = 8.0 - 9.0 * lambda;
  c.xi_lambda = -729.0 * lambda * (lambda - 1.0) * (7.0 * lambda - 8.0);
  c.delta_lambda = 531441.0 * a * a * (1.0 - lambda) * (1.0 - lambda) * lambda * lambda;
  if (lambda > 1.0 / 9.0 && lambda < 8.0 / 9.0) {
    const double sd = std::sqrt(c.delta_lambda);
    const double roots = std::cbrt(std::abs(c.xi_lambda + sd)) + std::cbrt(std::abs(c.xi_lambda - sd));
    c.t_r = (6.0 * (2.0 - 3.0 * lambda) - roots / std::cbrt(2.0)) / (3.0 * a);
  }
  return c;
}

enum class PhaseLabel { QuasiHermitian, DisconnectedComplex, ThreeRealIntervals, ConnectedSingle };

inline std::string_view to_string(PhaseLabel p) noexcept {
  switch (p) {
    case PhaseLabel::QuasiHermitian: return "QuasiHermitian";
    case PhaseLabel::DisconnectedComplex: return "DisconnectedComplex";
    case PhaseLabel::ThreeRealIntervals: return "ThreeRealIntervals";
    case PhaseLabel::ConnectedSingle: return "ConnectedSingle";
  }
  return "unknown";
}

struct PhaseResult {
  PhaseLabel label;
  bool on_boundary = false;
};

namespace detail {

inline bool strictly_between(double t, double a, double b) noexcept {
  return std::min(a, b) < t && t < std::max(a, b);
}

inline PhaseLabel phase_interior(const CriticalCurves& c, double t) noexcept {
  if (t > 0.0) return PhaseLabel::QuasiHermitian;
  if (strictly_between(t, c.t_c, c.t_cr)) return PhaseLabel::DisconnectedComplex;
  if (c.t_r && strictly_between(t, *c.t_r, c.t_cr)) return PhaseLabel::ThreeRealIntervals;
  return PhaseLabel::ConnectedSingle;
}

}  // namespace detail

/// Phase of the (lambda, t) plane. A point on a critical curve (within
/// 1e-12 relative) is flagged and takes the label of the side facing away
/// from t = -1, i.e. towards larger |log|t||.
inline PhaseResult phase_classify(double lambda, double t) {
  if (t == 0.0 || !std::isfinite(t)) throw std::invalid_argument("phase_classify: t must be finite and nonzero");
  const CriticalCurves c = critical_curves(lambda);
  if (t > 0.0) return {PhaseLabel::QuasiHermitian, false};
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  bool tie = std::abs(t - c.t_cr) <= tol || std::abs(t - c.t_c) <= tol;
  if (c.t_r) tie = tie || std::abs(t - *c.t_r) <= tol;
  if (!tie) return {detail::phase_interior(c, t), false};
  const double nudge = 1e-9 * std::abs(t);
  const double moved = std::abs(t) >= 1.0 ? t - nudge : t + nudge;
  return {detail::phase_interior(c, moved), true};
}

}  // namespace pherm
