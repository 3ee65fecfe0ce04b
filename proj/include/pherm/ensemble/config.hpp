#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "pherm/linalg/eigen.hpp"
#include "pherm/linalg/metric.hpp"
#include "pherm/linalg/spectrum.hpp"

namespace pherm {

struct ModelParams {
  MetricSpec metric{1, 0, -1.0};
  double m = 1.0;
  std::uint64_t seed = 0;
};

/// Rectangle [re_lo, re_hi] x [im_lo, im_hi] in the complex plane.
struct Window2D {
  double re_lo = -1.0;
  double re_hi = 1.0;
  double im_lo = -1.0;
  double im_hi = 1.0;

  static Window2D square(double half) { return {-half, half, -half, half}; }
  bool operator==(const Window2D&) const = default;
};

struct Range1D {
  double lo = -1.0;
  double hi = 1.0;
  bool operator==(const Range1D&) const = default;
};

struct RunConfig {
  ModelParams model;
  std::size_t samples = 1;
  std::size_t bins_1d = 100;
  std::size_t bins_2d_x = 64;
  std::size_t bins_2d_y = 64;
  /// Unset ranges are chosen from the prediction and the data (1.2x extent).
  std::optional<Range1D> range_1d;
  std::optional<Window2D> window_2d;
  std::size_t workers = 1;
  EigenBackend backend = default_backend();
  double classification_tol = default_classification_tol;
  /// Keep per-sample spectra in the artifact (needed for eigenvalues.csv).
  bool keep_spectra = true;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    if (bins_1d < 2) throw std::invalid_argument("bins_1d must be at least 2");
    if (bins_2d_x < 2 || bins_2d_y < 2) throw std::invalid_argument("2-D bins must be at least 2 per axis");
    if (bins_2d_y % 2 != 0) throw std::invalid_argument("bins_2d_y must be even so the real axis is a bin edge");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (!(model.m > 0.0)) throw std::invalid_argument("m must be positive");
    if (!(classification_tol > 0.0)) throw std::invalid_argument("classification tolerance must be positive");
    if (range_1d && !(range_1d->hi > range_1d->lo)) throw std::invalid_argument("range_1d must have hi > lo");
    if (window_2d) {
      const Window2D& w = *window_2d;
      if (!(w.re_hi > w.re_lo) || !(w.im_hi > 0.0)) throw std::invalid_argument("window_2d must be non-empty");
      if (w.im_lo != -w.im_hi) throw std::invalid_argument("window_2d must be symmetric about the real axis");
    }
    if (backend == EigenBackend::lapack && !lapack_available())
      throw std::invalid_argument("LAPACK backend requested but not compiled in");
  }
};

inline std::size_t default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

inline std::string to_string(EigenBackend b) { return b == EigenBackend::native ? "native" : "lapack"; }

inline EigenBackend parse_backend(const std::string& s) {
  if (s == "native") return EigenBackend::native;
  if (s == "lapack") return EigenBackend::lapack;
  throw std::invalid_argument("unknown eigensolver backend '" + s + "' (expected native or lapack)");
}

}  // namespace pherm
