#pragma once

// Gap equation for the two-valued metric diag(1,...,1,t,...,t) and the
// quantities derived from its holomorphic solution.
//
// In rescaled units u = m w, v = m b the gap equation reads
//   v^3 + (1 + 1/t) u v^2 + (u^2/t + 1) v + (1 - lambda + lambda/t) u = 0
// and the resolvent is G(w) = lambda/(w + b) + (1 - lambda)/(w + t b).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "pherm/analytic/cubic.hpp"
#include "pherm/error.hpp"

namespace pherm {

namespace detail {

inline void check_model(double lambda, double t, double m) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (t == 0.0 || !std::isfinite(t)) throw std::invalid_argument("t must be finite and nonzero");
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("m must be positive");
}

}  // namespace detail

/// Gap-equation cubic in v at the rescaled spectral point u = m w.
inline CubicCoefficients gap_cubic(cplx u, double lambda, double t) {
  return {1.0, u * (1.0 + 1.0 / t), u * u / t + 1.0, u * (1.0 - lambda + lambda / t)};
}

/// Constant c in the large-|u| behaviour v ~ c / u of the holomorphic root.
inline double asymptote_constant(double lambda, double t) noexcept { return -(lambda + t * (1.0 - lambda)); }

/// Resolvent from a gap-equation root, both in original units.
inline cplx green_function(cplx w, cplx b, double lambda, double t) {
  cplx g = 0.0;
  if (lambda != 0.0) g += lambda / (w + b);
  if (lambda != 1.0) g += (1.0 - lambda) / (w + t * b);
  return g;
}

enum class BranchTag { holomorphic_consistent, ambiguous };

struct GreenBranch {
  cplx w;
  cplx b;
  BranchTag branch_tag = BranchTag::holomorphic_consistent;
};

namespace detail {

struct RootPick {
  cplx v;
  double nearest;
  double second;
};

inline RootPick pick_root(const std::array<cplx, 3>& roots, cplx target) {
  std::array<double, 3> d{};
  for (std::size_t i = 0; i < 3; ++i) d[i] = std::abs(roots[i] - target);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (d[i] < d[best]) best = i;
  double second = INFINITY;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != best) second = std::min(second, d[i]);
  return {roots[best], d[best], second};
}

}  // namespace detail

/// Holomorphic root of the gap equation at w, continued inward along the ray
/// through w from radius max(10^3/m, 10|w|), where it is selected by the
/// asymptote.
inline GreenBranch green_branch(cplx w, double lambda, double t, double m) {
  detail::check_model(lambda, t, m);
  const cplx u_target = m * w;
  const double r_target = std::abs(u_target);
  if (!(r_target > 0.0) || !std::isfinite(r_target))
    throw std::invalid_argument("green_branch: w must be finite and nonzero");
  const cplx dir = u_target / r_target;
  const double c = asymptote_constant(lambda, t);

  double r = std::max(1e3, 10.0 * r_target);
  cplx u = r * dir;
  cplx v = detail::pick_root(solve_cubic(gap_cubic(u, lambda, t)), c / u).v;
  cplx v_prev = v;
  double r_prev = r;
  BranchTag tag = BranchTag::holomorphic_consistent;

  double ratio = 0.9;
  constexpr double min_log_step = 1e-9;
  while (r > r_target) {
    const double r_next = std::max(r_target, r * ratio);
    const cplx u_next = r_next * dir;
    // Linear predictor in log r from the last two accepted points.
    cplx pred = v;
    if (r_prev != r) pred = v + (v - v_prev) * (std::log(r_next / r) / std::log(r / r_prev));
    const auto pick = detail::pick_root(solve_cubic(gap_cubic(u_next, lambda, t)), pred);
    const bool clear = pick.second > 4.0 * pick.nearest;
    if (!clear && std::log(r / r_next) > min_log_step) {
      ratio = std::sqrt(ratio);
      continue;
    }
    if (!clear) tag = BranchTag::ambiguous;
    v_prev = v;
    r_prev = r;
    v = pick.v;
    r = r_next;
    ratio = std::max(0.5, ratio * ratio);
  }
  return {w, v / m, tag};
}

/// Density of real eigenvalues at x, from the root of the gap equation at
/// u = m x that gives the largest Im G (the x - i0 side of the cut).
inline double rho_real_general(double x, double lambda, double t, double m) {
  detail::check_model(lambda, t, m);
  const cplx u = m * x;
  const auto roots = solve_cubic(gap_cubic(u, lambda, t));
  double best = 0.0;
  for (const cplx& v : roots) {
    const double guard = 1e-12 * (1.0 + std::abs(u) + std::abs(v));
    const cplx d1 = u + v;
    const cplx d2 = u + t * v;
    if (lambda != 0.0 && std::abs(d1) <= guard) continue;
    if (lambda != 1.0 && std::abs(d2) <= guard) continue;
    const double im = green_function(u, v, lambda, t).imag();
    best = std::max(best, im);
  }
  return m * best / std::numbers::pi;
}

struct Interval {
  double lo;
  double hi;
  double width() const noexcept { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

struct SupportIntervals {
  std::vector<Interval> intervals;
  double lambda = 0.0;
  double t = 0.0;
  double m = 1.0;

  std::size_t count() const noexcept { return intervals.size(); }
  bool contains(double x) const noexcept {
    return std::any_of(intervals.begin(), intervals.end(), [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
  }
};

/// Coefficients (p3, p2, p1, p0) of P with P(u^2) equal to the discriminant
/// of the gap cubic at real u.
inline std::array<double, 4> discriminant_polynomial(double lambda, double t) {
  const double beta = 1.0 + 1.0 / t;
  const double kappa = 1.0 - lambda + lambda / t;
  const double p3 = beta * beta / (t * t) - 4.0 / (t * t * t);
  const double p2 = 18.0 * beta * kappa / t - 4.0 * beta * beta * beta * kappa + 2.0 * beta * beta / t - 12.0 / (t * t);
  const double p1 = 18.0 * beta * kappa + beta * beta - 12.0 / t - 27.0 * kappa * kappa;
  return {p3, p2, p1, -4.0};
}

namespace detail {

inline double eval_poly(const std::array<double, 4>& p, double s) noexcept {
  return ((p[0] * s + p[1]) * s + p[2]) * s + p[3];
}

/// Positive real roots of the discriminant polynomial, ascending.
inline std::vector<double> positive_discriminant_roots(const std::array<double, 4>& p) {
  const double scale = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2]), std::abs(p[3])});
  std::vector<cplx> cands;
  if (std::abs(p[0]) > 1e-13 * scale) {
    const auto r = solve_cubic({p[0], p[1], p[2], p[3]});
    cands.assign(r.begin(), r.end());
  } else if (std::abs(p[1]) > 1e-13 * scale) {
    const cplx disc = std::sqrt(cplx(p[2] * p[2] - 4.0 * p[1] * p[3]));
    const cplx q = -0.5 * (p[2] + (p[2] >= 0.0 ? disc : -disc));
    cands.push_back(q / p[1]);
    if (q != 0.0) cands.push_back(p[3] / q);
  } else if (p[2] != 0.0) {
    cands.emplace_back(-p[3] / p[2]);
  }
  std::vector<double> out;
  for (const cplx& z : cands) {
    if (std::abs(z.imag()) > 1e-5 * std::max(1.0, std::abs(z))) continue;
    double s = z.real();
    if (!(s > 0.0)) continue;
    for (int it = 0; it < 50; ++it) {
      const double f = eval_poly(p, s);
      const double df = (3.0 * p[0] * s + 2.0 * p[1]) * s + p[2];
      if (df == 0.0) break;
      const double step = f / df;
      const double next = s - step;
      if (!(next > 0.0) || std::abs(eval_poly(p, next)) >= std::abs(f)) break;
      s = next;
      if (std::abs(step) <= 1e-16 * s) break;
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Ordered disjoint intervals on which the real density is positive.
///
/// Endpoints are the real zeros +-sqrt(s)/m of the discriminant in s = u^2;
/// each segment between consecutive zeros is kept when the density at its
/// midpoint is positive, and adjacent kept segments are merged.
inline SupportIntervals support_intervals(double lambda, double t, double m) {
  detail::check_model(lambda, t, m);
  SupportIntervals out{{}, lambda, t, m};
  const auto s_roots = detail::positive_discriminant_roots(discriminant_polynomial(lambda, t));
  std::vector<double> xs;
  for (double s : s_roots) {
    xs.push_back(-std::sqrt(s) / m);
    xs.push_back(std::sqrt(s) / m);
  }
  std::sort(xs.begin(), xs.end());
  const double thresh = 1e-10 * m;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double lo = xs[i];
    const double hi = xs[i + 1];
    if (!(hi > lo)) continue;
    if (rho_real_general(0.5 * (lo + hi), lambda, t, m) <= thresh) continue;
    if (!out.intervals.empty() && out.intervals.back().hi == lo)
      out.intervals.back().hi = hi;
    else
      out.intervals.push_back({lo, hi});
  }
  return out;
}

/// Total mass of real eigenvalues, by quadrature of the density over its support.
inline double fraction_real_general(double lambda, double t, double m) {
  const auto sup = support_intervals(lambda, t, m);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (const Interval& iv : sup.intervals) {
    total += integrator.integrate([&](double x) { return rho_real_general(x, lambda, t, m); }, iv.lo, iv.hi, 1e-12);
  }
  return total;
}

}  // namespace pherm
