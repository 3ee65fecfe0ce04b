#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pherm/analytic/boundary.hpp"
#include "pherm/analytic/closed_form.hpp"
#include "pherm/analytic/green.hpp"
#include "pherm/analytic/phase.hpp"
#include "pherm/analytic/prediction.hpp"
#include "pherm/ensemble/histogram.hpp"
#include "pherm/ensemble/run.hpp"
#include "pherm/linalg/spectrum.hpp"

namespace pherm {

struct FractionEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> per_sample;
  std::size_t n = 0;
  std::size_t k = 0;
  double t = 0.0;

  double min() const { return per_sample.empty() ? 0.0 : *std::min_element(per_sample.begin(), per_sample.end()); }
};

inline FractionEstimate estimate_fraction_real(const RunArtifact& art) {
  if (art.real_counts.empty()) throw std::invalid_argument("estimate_fraction_real: artifact has no samples");
  FractionEstimate f;
  f.n = art.config.model.metric.n();
  f.k = art.config.model.metric.k();
  f.t = art.config.model.metric.t();
  for (std::size_t c : art.real_counts) f.per_sample.push_back(static_cast<double>(c) / static_cast<double>(f.n));
  const double s = static_cast<double>(f.per_sample.size());
  f.mean = std::accumulate(f.per_sample.begin(), f.per_sample.end(), 0.0) / s;
  if (f.per_sample.size() > 1) {
    double ss = 0.0;
    for (double x : f.per_sample) ss += (x - f.mean) * (x - f.mean);
    f.std_error = std::sqrt(ss / (s - 1.0) / s);
  }
  return f;
}

/// c / (sqrt(N) m), the bulk length scale used to dilate or erode the domain.
inline double spacing_margin(std::size_t n, double m, double c = 3.0) {
  return c / (std::sqrt(static_cast<double>(n)) * m);
}

/// Fraction of complex-classified eigenvalues farther than `margin` from the
/// predicted domain. Zero when there are no complex eigenvalues.
inline double boundary_violation_rate(const std::vector<Spectrum>& spectra, const BoundaryCurve& boundary,
                                      double margin) {
  const BoundaryRegion region(boundary);
  std::size_t total = 0;
  std::size_t outside = 0;
  for (const Spectrum& s : spectra) {
    for (auto [i, j] : s.pair_indices) {
      for (std::size_t idx : {i, j}) {
        ++total;
        if (!region.contains_dilated(s.eigenvalues[idx], margin)) ++outside;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(outside) / static_cast<double>(total);
}

struct CellDeviation {
  std::size_t ix;
  std::size_t iy;
  double density;
  double relative_deviation;
};

struct UniformityReport {
  double expected = 0.0;
  std::vector<CellDeviation> interior;
  double max_relative_deviation = 0.0;
  /// Pooled density over all interior cells and its Poisson standard error.
  double pooled_density = 0.0;
  double pooled_std_error = 0.0;
  /// Largest density in cells wholly outside the dilated domain.
  double max_exterior_density = 0.0;
};

/// Compare 2-D histogram cells that lie wholly inside the domain eroded by
/// `margin` with the uniform density m^2/pi. Cells are tested on a 5x5 grid
/// of points covering their closure. The real axis is treated as part of the
/// boundary of the region holding non-real eigenvalues, so cells within
/// `margin` of it are never interior.
inline UniformityReport uniformity_check(const Histogram2D& h, double lambda, double m, double margin) {
  const BoundaryRegion region(make_boundary_curve(lambda, m));
  UniformityReport rep;
  rep.expected = rho_complex_uniform(m);
  const double area = h.dx() * h.dy();
  std::uint64_t pooled = 0;
  double pooled_area = 0.0;
  constexpr int probes = 5;
  for (std::size_t ix = 0; ix < h.nx; ++ix) {
    for (std::size_t iy = 0; iy < h.ny; ++iy) {
      bool inside = true;
      bool outside = true;
      for (int a = 0; a < probes; ++a) {
        for (int b = 0; b < probes; ++b) {
          const cplx z(h.re_lo(ix) + h.dx() * a / (probes - 1), h.im_lo(iy) + h.dy() * b / (probes - 1));
          if (inside && (std::abs(z.imag()) < margin || !region.contains_eroded(z, margin))) inside = false;
          if (outside && region.contains_dilated(z, margin)) outside = false;
        }
      }
      const double d = h.density_at(ix, iy);
      if (inside) {
        const double rel = std::abs(d - rep.expected) / rep.expected;
        rep.interior.push_back({ix, iy, d, rel});
        rep.max_relative_deviation = std::max(rep.max_relative_deviation, rel);
        pooled += h.count(ix, iy);
        pooled_area += area;
      } else if (outside) {
        rep.max_exterior_density = std::max(rep.max_exterior_density, d);
      }
    }
  }
  if (pooled_area > 0.0 && h.total_eigenvalues > 0) {
    const double norm = static_cast<double>(h.total_eigenvalues) * pooled_area;
    rep.pooled_density = static_cast<double>(pooled) / norm;
    rep.pooled_std_error = std::sqrt(static_cast<double>(pooled)) / norm;
  }
  return rep;
}

struct DensityComparison {
  double l1 = 0.0;
  double ks = 0.0;
};

/// L1 distance between histogram and curve densities, and the largest gap
/// between their cumulative masses. The curve must be tabulated at the bin
/// centers.
inline DensityComparison compare_density(const Histogram1D& h, const RealDensityCurve& curve) {
  if (curve.xs.size() != h.bins()) throw std::invalid_argument("compare_density: curve is not tabulated per bin");
  DensityComparison out;
  double cum_h = 0.0;
  double cum_c = 0.0;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double w = h.width(i);
    if (std::abs(curve.xs[i] - h.center(i)) > 1e-9 * std::max(1.0, w))
      throw std::invalid_argument("compare_density: curve abscissae differ from bin centers");
    out.l1 += std::abs(h.density[i] - curve.rho[i]) * w;
    cum_h += h.density[i] * w;
    cum_c += curve.rho[i] * w;
    out.ks = std::max(out.ks, std::abs(cum_h - cum_c));
  }
  return out;
}

/// Histogram against the model density evaluated at its bin centers.
inline DensityComparison compare_density(const Histogram1D& h, double lambda, double t, double m) {
  return compare_density(h, real_density_curve(h.centers(), lambda, t, m));
}

/// Mean of the two bins adjacent to x = 0 (or the bin containing 0 when the
/// bin count is odd).
inline double density_at_origin(const Histogram1D& h) {
  for (std::size_t i = 0; i < h.bins(); ++i) {
    if (h.edges[i] <= 0.0 && 0.0 < h.edges[i + 1]) {
      if (h.edges[i] == 0.0 && i > 0) return 0.5 * (h.density[i - 1] + h.density[i]);
      return h.density[i];
    }
  }
  throw std::invalid_argument("density_at_origin: 0 outside histogram range");
}

/// Kolmogorov distribution tail Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
inline double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double s = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    s += (j % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// (effective-size correction of Stephens).
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

struct SymmetryTest {
  double mean_difference = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

/// Two-sided z-test that complex eigenvalues are equally likely left and
/// right of the imaginary axis, using per-sample count differences.
inline SymmetryTest imaginary_axis_symmetry(const std::vector<Spectrum>& spectra) {
  if (spectra.size() < 2) throw std::invalid_argument("imaginary_axis_symmetry: need at least 2 samples");
  std::vector<double> diff;
  diff.reserve(spectra.size());
  for (const Spectrum& s : spectra) {
    double left = 0.0;
    double right = 0.0;
    for (const cplx& z : s.complex_values()) (z.real() < 0.0 ? left : right) += 1.0;
    diff.push_back(right - left);
  }
  const double n = static_cast<double>(diff.size());
  SymmetryTest r;
  r.mean_difference = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : diff) ss += (x - r.mean_difference) * (x - r.mean_difference);
  r.std_error = std::sqrt(ss / (n - 1.0) / n);
  if (r.std_error == 0.0) {
    r.p_value = r.mean_difference == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.z = r.mean_difference / r.std_error;
  r.p_value = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  return r;
}

struct RealGap {
  double lo = 0.0;  ///< |x| where the gap starts
  double hi = 0.0;  ///< |x| where it ends
  std::size_t locked_count = 0;
  double significance = 0.0;
};

struct RealIntervalDetection {
  std::vector<Interval> intervals;
  std::vector<RealGap> gaps;
  std::size_t samples = 0;
  std::size_t pooled = 0;

  std::size_t count() const noexcept { return intervals.size(); }
};

/// Real support intervals from per-sample spectra, assuming the x -> -x
/// symmetry of the ensemble.
///
/// Inside a spectral gap at |x| = c the count of real eigenvalues in [-c, c]
/// is the same in almost every sample, while inside the support it
/// fluctuates. A gap is a stretch of the pooled |x| values over which that
/// count takes one positive value in at least `agreement` of the samples,
/// with at least one eigenvalue per sample beyond it on average, and whose
/// width exceeds `min_spacings` mean per-sample spacings of its denser flank.
inline RealIntervalDetection detect_real_intervals(const std::vector<Spectrum>& spectra, double agreement = 0.9,
                                                   double min_spacings = 2.0) {
  if (spectra.empty()) throw std::invalid_argument("detect_real_intervals: no samples");
  RealIntervalDetection out;
  out.samples = spectra.size();
  std::vector<std::vector<double>> per(spectra.size());
  std::vector<double> pooled;
  for (std::size_t s = 0; s < spectra.size(); ++s) {
    for (double x : spectra[s].real_values()) per[s].push_back(std::abs(x));
    std::sort(per[s].begin(), per[s].end());
    pooled.insert(pooled.end(), per[s].begin(), per[s].end());
  }
  std::sort(pooled.begin(), pooled.end());
  out.pooled = pooled.size();
  if (pooled.empty()) return out;

  const std::size_t ns = spectra.size();
  const std::size_t p = pooled.size();
  const auto need = static_cast<std::size_t>(std::ceil(agreement * static_cast<double>(ns)));
  std::vector<std::size_t> counts(ns);

  // Runs [a, b] of pooled indices whose midpoints c_i = (x_i + x_{i+1}) / 2
  // share the same locked count.
  struct Run {
    std::size_t a;
    std::size_t b;
    std::size_t count;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i + 1 < p; ++i) {
    if (pooled[i + 1] == pooled[i]) continue;
    if (p - 1 - i < ns) break;
    const double c = 0.5 * (pooled[i] + pooled[i + 1]);
    for (std::size_t s = 0; s < ns; ++s)
      counts[s] = static_cast<std::size_t>(std::upper_bound(per[s].begin(), per[s].end(), c) - per[s].begin());
    std::vector<std::size_t> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    std::size_t best = 0;
    std::size_t mode = 0;
    for (std::size_t j = 0; j < ns;) {
      std::size_t k = j;
      while (k < ns && sorted[k] == sorted[j]) ++k;
      if (k - j > best) {
        best = k - j;
        mode = sorted[j];
      }
      j = k;
    }
    if (best < need || mode == 0) continue;
    if (!runs.empty() && runs.back().b + 1 == i && runs.back().count == mode)
      runs.back().b = i;
    else
      runs.push_back({i, i, mode});
  }

  const std::size_t flank = 2 * ns;
  for (const Run& r : runs) {
    const double lo = pooled[r.a];
    const double hi = pooled[r.b + 1];
    double density = 0.0;
    if (r.a > 0) {
      const std::size_t j = r.a >= flank ? r.a - flank : 0;
      const double len = lo - pooled[j];
      if (len > 0.0) density = std::max(density, static_cast<double>(r.a - j) / (static_cast<double>(ns) * len));
    }
    if (r.b + 2 < p) {
      const std::size_t j = std::min(r.b + 1 + flank, p - 1);
      const double len = pooled[j] - hi;
      if (len > 0.0)
        density = std::max(density, static_cast<double>(j - r.b - 1) / (static_cast<double>(ns) * len));
    }
    const double sig = (hi - lo) * density;
    if (sig >= min_spacings) out.gaps.push_back({lo, hi, r.count, sig});
  }

  std::vector<Interval> half;
  double start = pooled.front();
  for (const RealGap& g : out.gaps) {
    half.push_back({start, g.lo});
    start = g.hi;
  }
  half.push_back({start, pooled.back()});
  for (std::size_t i = half.size(); i-- > 1;) out.intervals.push_back({-half[i].hi, -half[i].lo});
  out.intervals.push_back({-half[0].hi, half[0].hi});
  for (std::size_t i = 1; i < half.size(); ++i) out.intervals.push_back(half[i]);
  return out;
}

/// Points where the complex domain meets the real axis at t = t_cr(lambda):
/// the outer ends of the real support there.
inline std::vector<double> predicted_touch_points(double lambda, double m) {
  const CriticalCurves c = critical_curves(lambda);
  const SupportIntervals s = support_intervals(lambda, c.t_cr, m);
  const double e = real_extent(s);
  return {-e, e};
}

/// Smallest distance from a complex-classified eigenvalue to any of `points`
/// on the real axis (infinity when there are no complex eigenvalues).
inline double complex_distance_to_points(const std::vector<Spectrum>& spectra, const std::vector<double>& points) {
  double best = INFINITY;
  for (const Spectrum& s : spectra)
    for (const cplx& z : s.complex_values())
      for (double x : points) best = std::min(best, std::abs(z - cplx(x, 0.0)));
  return best;
}

}  // namespace pherm
