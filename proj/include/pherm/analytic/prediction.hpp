#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pherm/analytic/boundary.hpp"
#include "pherm/analytic/closed_form.hpp"
#include "pherm/analytic/green.hpp"
#include "pherm/analytic/phase.hpp"

namespace pherm {

/// Real-axis density tabulated on a grid, normalized to total eigenvalue mass 1.
struct RealDensityCurve {
  std::vector<double> xs;
  std::vector<double> rho;
  double lambda = 0.0;
  double t = -1.0;
  double m = 1.0;
};

/// Density at x: the closed form at t = -1, the gap-equation route otherwise.
inline double rho_real(double x, double lambda, double t, double m) {
  return t == -1.0 ? rho_real_closed_form(x, lambda, m) : rho_real_general(x, lambda, t, m);
}

inline RealDensityCurve real_density_curve(std::vector<double> xs, double lambda, double t, double m) {
  RealDensityCurve c{std::move(xs), {}, lambda, t, m};
  c.rho.reserve(c.xs.size());
  for (double x : c.xs) c.rho.push_back(rho_real(x, lambda, t, m));
  return c;
}

/// Largest |x| of the real support, or 0 when it is empty.
inline double real_extent(const SupportIntervals& s) {
  double e = 0.0;
  for (const Interval& iv : s.intervals) e = std::max({e, std::abs(iv.lo), std::abs(iv.hi)});
  return e;
}

/// Uniform grid of `points` abscissae over [-pad*E, pad*E], E the real extent.
inline RealDensityCurve real_density_curve(double lambda, double t, double m, std::size_t points, double pad = 1.1) {
  if (points < 2) throw std::invalid_argument("real_density_curve: need at least 2 points");
  double e = real_extent(support_intervals(lambda, t, m));
  if (e == 0.0) e = 2.0 / m;
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = -pad * e + 2.0 * pad * e * static_cast<double>(i) / static_cast<double>(points - 1);
  return real_density_curve(std::move(xs), lambda, t, m);
}

/// Everything the large-N theory says about one parameter point.
struct AnalyticPrediction {
  double lambda = 0.0;
  double t = -1.0;
  double m = 1.0;
  RealDensityCurve density;
  SupportIntervals support;
  double fraction_real = 1.0;
  std::optional<BoundaryCurve> boundary;  ///< t = -1 only
  std::optional<PhaseResult> phase;       ///< 0 < lambda < 1 only
  std::optional<CriticalCurves> curves;   ///< 0 < lambda < 1 only

  /// Half-size of a square window that holds the predicted spectrum.
  double extent() const {
    double e = real_extent(support);
    if (boundary) e = std::max(e, 1.0 / m);
    return e;
  }
};

inline AnalyticPrediction predict(double lambda, double t, double m, std::size_t points = 401) {
  AnalyticPrediction p;
  p.lambda = lambda;
  p.t = t;
  p.m = m;
  p.support = support_intervals(lambda, t, m);
  p.density = real_density_curve(lambda, t, m, points);
  if (t == -1.0) {
    p.fraction_real = fraction_real(lambda);
    if (lambda > 0.0 && lambda < 1.0) p.boundary = make_boundary_curve(lambda, m);
  } else {
    p.fraction_real = fraction_real_general(lambda, t, m);
  }
  if (lambda > 0.0 && lambda < 1.0) {
    p.curves = critical_curves(lambda);
    p.phase = phase_classify(lambda, t);
  }
  return p;
}

}  // namespace pherm
