#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pherm/analytic/closed_form.hpp"
#include "pherm/linalg/matrix.hpp"

namespace pherm {

/// Sampled boundary of the complex domain at t = -1.
///
/// The first half of thetas covers [theta0, pi - theta0] (upper blob), the
/// second half the same grid shifted by pi (lower blob).
struct BoundaryCurve {
  std::vector<double> thetas;
  std::vector<double> r_minus;
  std::vector<double> r_plus;
  double theta0 = 0.0;
  double lambda = 0.0;
  double m = 1.0;
  static constexpr double valid_only_for_t = -1.0;

  std::size_t points_per_blob() const noexcept { return thetas.size() / 2; }
};

inline BoundaryCurve make_boundary_curve(double lambda, double m, std::size_t points = 2048) {
  if (points < 2) throw std::invalid_argument("boundary curve needs at least 2 points per blob");
  BoundaryCurve c;
  c.lambda = lambda;
  c.m = m;
  c.theta0 = theta0(lambda);
  const double lo = c.theta0;
  const double hi = std::numbers::pi - c.theta0;
  for (int blob = 0; blob < 2; ++blob) {
    for (std::size_t i = 0; i < points; ++i) {
      double th = (i + 1 == points) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      const auto r = boundary_t_minus1(th, lambda, m);
      // Endpoints are valid by construction; guard against rounding in asin.
      const BoundaryRadii rr = r ? *r : BoundaryRadii{1.0 / (std::numbers::sqrt2 * m), 1.0 / (std::numbers::sqrt2 * m)};
      c.thetas.push_back(blob == 0 ? th : th + std::numbers::pi);
      c.r_minus.push_back(rr.r_minus);
      c.r_plus.push_back(rr.r_plus);
    }
  }
  return c;
}

/// Point-set view of the domain: exact membership plus distance to its
/// boundary through the sampled polylines.
class BoundaryRegion {
 public:
  explicit BoundaryRegion(const BoundaryCurve& curve) : lambda_(curve.lambda), m_(curve.m) {
    const std::size_t p = curve.points_per_blob();
    const bool has_inner = std::abs(2.0 * lambda_ - 1.0) > 0.0;
    for (std::size_t blob = 0; blob < 2; ++blob) {
      for (std::size_t i = 0; i + 1 < p; ++i) {
        const std::size_t a = blob * p + i;
        const std::size_t b = a + 1;
        add_segment(std::polar(curve.r_plus[a], curve.thetas[a]), std::polar(curve.r_plus[b], curve.thetas[b]));
        if (has_inner)
          add_segment(std::polar(curve.r_minus[a], curve.thetas[a]), std::polar(curve.r_minus[b], curve.thetas[b]));
      }
    }
  }

  bool contains(cplx z) const {
    const double r = std::abs(z);
    if (r == 0.0) return std::abs(2.0 * lambda_ - 1.0) == 0.0;
    const auto rr = boundary_t_minus1(std::arg(z), lambda_, m_);
    return rr && rr->r_minus <= r && r <= rr->r_plus;
  }

  /// Euclidean distance from z to the sampled boundary.
  double distance_to_boundary(cplx z) const {
    double best = INFINITY;
    for (const auto& s : segments_) {
      const cplx d = s.b - s.a;
      const double len2 = std::norm(d);
      double tt = len2 > 0.0 ? ((z - s.a) * std::conj(d)).real() / len2 : 0.0;
      tt = std::clamp(tt, 0.0, 1.0);
      best = std::min(best, std::abs(z - (s.a + tt * d)));
    }
    return best;
  }

  /// Distance from z to the region (zero inside).
  double distance(cplx z) const { return contains(z) ? 0.0 : distance_to_boundary(z); }

  /// True when z lies in the region dilated by margin.
  bool contains_dilated(cplx z, double margin) const { return distance(z) <= margin; }

  /// True when z lies in the region eroded by margin.
  bool contains_eroded(cplx z, double margin) const { return contains(z) && distance_to_boundary(z) >= margin; }

 private:
  struct Segment {
    cplx a;
    cplx b;
  };
  void add_segment(cplx a, cplx b) {
    if (a != b) segments_.push_back({a, b});
  }

  double lambda_;
  double m_;
  std::vector<Segment> segments_;
};

}  // namespace pherm
