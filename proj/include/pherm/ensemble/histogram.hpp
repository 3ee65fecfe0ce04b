#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pherm/ensemble/config.hpp"
#include "pherm/linalg/matrix.hpp"

namespace pherm {

/// Histogram of real eigenvalues. Densities are per unit length and are
/// normalized by the total eigenvalue count, real and complex together.
struct Histogram1D {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::vector<double> density;
  std::uint64_t total_eigenvalues = 0;
  std::uint64_t out_of_range = 0;

  Histogram1D() = default;
  Histogram1D(Range1D range, std::size_t bins) : edges(bins + 1), counts(bins, 0), density(bins, 0.0) {
    for (std::size_t i = 0; i <= bins; ++i)
      edges[i] = range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(bins);
    edges[bins] = range.hi;
  }

  std::size_t bins() const noexcept { return counts.size(); }
  double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
  double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }

  std::vector<double> centers() const {
    std::vector<double> c(bins());
    for (std::size_t i = 0; i < bins(); ++i) c[i] = center(i);
    return c;
  }

  void add(double x) {
    const double lo = edges.front();
    const double hi = edges.back();
    if (!(x >= lo && x <= hi)) {
      ++out_of_range;
      return;
    }
    auto i = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins()));
    if (i >= bins()) i = bins() - 1;
    ++counts[i];
  }

  void normalize(std::uint64_t total) {
    total_eigenvalues = total;
    for (std::size_t i = 0; i < bins(); ++i)
      density[i] = total == 0 ? 0.0 : static_cast<double>(counts[i]) / (static_cast<double>(total) * width(i));
  }

  std::uint64_t total_count() const noexcept {
    std::uint64_t s = out_of_range;
    for (auto c : counts) s += c;
    return s;
  }
};

/// Histogram of complex-classified eigenvalues on a window symmetric about
/// the real axis. Row iy covers imaginary parts [im_lo + iy h, im_lo + (iy+1) h).
/// Binning of the imaginary part goes through |Im|, so a conjugate pair always
/// lands in mirrored cells.
struct Histogram2D {
  Window2D window;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<std::uint64_t> counts;  // index ix * ny + iy
  std::vector<double> density;        // per unit area, normalized by total eigenvalues
  std::uint64_t total_eigenvalues = 0;
  std::uint64_t out_of_range = 0;

  Histogram2D() = default;
  Histogram2D(Window2D w, std::size_t nx_, std::size_t ny_)
      : window(w), nx(nx_), ny(ny_), counts(nx_ * ny_, 0), density(nx_ * ny_, 0.0) {
    if (ny % 2 != 0) throw std::invalid_argument("Histogram2D: ny must be even");
  }

  double dx() const noexcept { return (window.re_hi - window.re_lo) / static_cast<double>(nx); }
  double dy() const noexcept { return (window.im_hi - window.im_lo) / static_cast<double>(ny); }
  double re_lo(std::size_t ix) const noexcept { return window.re_lo + dx() * static_cast<double>(ix); }
  double im_lo(std::size_t iy) const noexcept { return window.im_lo + dy() * static_cast<double>(iy); }
  std::uint64_t count(std::size_t ix, std::size_t iy) const { return counts[ix * ny + iy]; }
  double density_at(std::size_t ix, std::size_t iy) const { return density[ix * ny + iy]; }

  void add(cplx z) {
    const double re = z.real();
    const double aim = std::abs(z.imag());
    if (!(re >= window.re_lo && re <= window.re_hi && aim <= window.im_hi)) {
      ++out_of_range;
      return;
    }
    auto ix = static_cast<std::size_t>((re - window.re_lo) / (window.re_hi - window.re_lo) * static_cast<double>(nx));
    if (ix >= nx) ix = nx - 1;
    const std::size_t half = ny / 2;
    auto k = static_cast<std::size_t>(aim / window.im_hi * static_cast<double>(half));
    if (k >= half) k = half - 1;
    const std::size_t iy = z.imag() >= 0.0 ? half + k : half - 1 - k;
    ++counts[ix * ny + iy];
  }

  void normalize(std::uint64_t total) {
    total_eigenvalues = total;
    const double area = dx() * dy();
    for (std::size_t i = 0; i < counts.size(); ++i)
      density[i] = total == 0 ? 0.0 : static_cast<double>(counts[i]) / (static_cast<double>(total) * area);
  }
};

}  // namespace pherm
