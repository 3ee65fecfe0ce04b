#pragma once

// Closed-form large-N predictions for the metric diag(1,...,1,-1,...,-1).

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace pherm {

namespace detail {

inline void check_lambda_m(double lambda, double m) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("m must be positive");
}

}  // namespace detail

/// Half-width a of the real support [-a, a].
inline double support_endpoint_a(double lambda, double m) {
  detail::check_lambda_m(lambda, m);
  const double r = 2.0 * std::sqrt(lambda * (1.0 - lambda));
  const double bracket = std::cbrt(1.0 - r) + std::cbrt(1.0 + r);
  const double num = 3.0 * std::cbrt(std::pow(1.0 - 2.0 * lambda, 2)) * bracket + 2.0;
  return std::sqrt(num / (2.0 * m * m));
}

/// Density of real eigenvalues at x; zero outside (-a, a).
inline double rho_real_closed_form(double x, double lambda, double m) {
  detail::check_lambda_m(lambda, m);
  const double a = support_endpoint_a(lambda, m);
  if (std::abs(x) >= a) return 0.0;
  const double one_m2l = 1.0 - 2.0 * lambda;
  if (std::abs(x) < 1e-12 * a) return m * std::abs(one_m2l) / std::numbers::pi;
  const double m2 = m * m;
  const double xi = -27.0 * m2 * m2 * one_m2l * x;
  const double c = 1.0 - m2 * x * x;
  const double delta = xi * xi + 108.0 * m2 * m2 * m2 * c * c * c;
  const double sd = std::sqrt(std::max(delta, 0.0));
  const double num = std::pow(std::abs(xi - sd), 2.0 / 3.0) - std::pow(std::abs(xi + sd), 2.0 / 3.0);
  const double sign = one_m2l > 0.0 ? 1.0 : (one_m2l < 0.0 ? -1.0 : 0.0);
  const double den = std::sqrt(3.0) * std::cbrt(4.0) * 6.0 * std::numbers::pi * m2 * x;
  return std::max(0.0, sign * num / den);
}

/// Angle theta0 in [0, pi/2] with sin(theta0) = |2 lambda - 1|.
inline double theta0(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  return std::asin(std::min(1.0, std::abs(2.0 * lambda - 1.0)));
}

struct BoundaryRadii {
  double r_minus;
  double r_plus;
};

/// Inner and outer radius of the complex domain along the ray at angle theta,
/// or nothing when the ray misses the domain (sin^2 theta < sin^2 theta0).
inline std::optional<BoundaryRadii> boundary_t_minus1(double theta, double lambda, double m) {
  detail::check_lambda_m(lambda, m);
  const double s0 = std::abs(2.0 * lambda - 1.0);
  const double st = std::abs(std::sin(theta));
  if (st == 0.0) {
    if (s0 != 0.0) return std::nullopt;
    return BoundaryRadii{0.0, 1.0 / m};
  }
  double q = s0 / st;
  if (q > 1.0 + 1e-14) return std::nullopt;
  q = std::min(q, 1.0);
  const double root = std::sqrt(1.0 - q * q);
  const double pre = 1.0 / (std::numbers::sqrt2 * m);
  return BoundaryRadii{pre * std::sqrt(1.0 - root), pre * std::sqrt(1.0 + root)};
}

/// Area of the complex domain.
inline double domain_area(double lambda, double m) {
  detail::check_lambda_m(lambda, m);
  return (1.0 - std::abs(1.0 - 2.0 * lambda)) * std::numbers::pi / (m * m);
}

/// Density of complex eigenvalues per unit area inside the domain.
inline double rho_complex_uniform(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
  return m * m / std::numbers::pi;
}

/// Fraction of real eigenvalues, |1 - 2 lambda|.
inline double fraction_real(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  return std::abs(1.0 - 2.0 * lambda);
}

/// Smallest distance between the complex domain and the real axis.
inline double distance_to_axis(double lambda, double m) {
  detail::check_lambda_m(lambda, m);
  return std::sin(theta0(lambda) / 2.0) / m;
}

}  // namespace pherm
