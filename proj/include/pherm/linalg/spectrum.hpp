#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pherm/error.hpp"
#include "pherm/linalg/matrix.hpp"

namespace pherm {

inline constexpr double default_classification_tol = 1e-8;

/// Eigenvalues of one matrix, split into real ones and conjugate pairs.
struct Spectrum {
  std::vector<cplx> eigenvalues;
  std::vector<std::size_t> real_indices;
  /// (i, j) with Im eigenvalues[i] > 0 and eigenvalues[j] ~ conj(eigenvalues[i]).
  std::vector<std::pair<std::size_t, std::size_t>> pair_indices;
  double classification_tolerance = default_classification_tol;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  std::size_t real_count() const noexcept { return real_indices.size(); }
  std::size_t complex_count() const noexcept { return 2 * pair_indices.size(); }
  double real_fraction() const noexcept {
    return eigenvalues.empty() ? 0.0 : static_cast<double>(real_count()) / static_cast<double>(size());
  }

  /// Per-index flag, true for real-classified eigenvalues.
  std::vector<bool> real_mask() const {
    std::vector<bool> mask(size(), false);
    for (std::size_t i : real_indices) mask[i] = true;
    return mask;
  }

  std::vector<double> real_values() const {
    std::vector<double> r;
    r.reserve(real_indices.size());
    for (std::size_t i : real_indices) r.push_back(eigenvalues[i].real());
    std::sort(r.begin(), r.end());
    return r;
  }

  std::vector<cplx> complex_values() const {
    std::vector<cplx> c;
    c.reserve(complex_count());
    for (auto [i, j] : pair_indices) {
      c.push_back(eigenvalues[i]);
      c.push_back(eigenvalues[j]);
    }
    return c;
  }
};

inline double spectral_scale(const std::vector<cplx>& eigs) {
  double s = 1.0;
  for (const cplx& z : eigs) s = std::max(s, std::abs(z));
  return s;
}

/// Split eigenvalues into reals and conjugate pairs.
///
/// Values with |Im| <= tol * scale are real. Each value in the upper half
/// plane is matched greedily, in (Re, Im) order, to the nearest unmatched
/// value in the lower half plane whose conjugate lies within tol * scale.
/// Anything left over off the axis is a classification failure and throws.
inline Spectrum classify_spectrum(std::vector<cplx> eigs, double tol = default_classification_tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify_spectrum: tolerance must be positive");
  Spectrum out;
  out.classification_tolerance = tol;
  const double thr = tol * spectral_scale(eigs);

  std::vector<std::size_t> order(eigs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (eigs[a].real() != eigs[b].real()) return eigs[a].real() < eigs[b].real();
    return eigs[a].imag() < eigs[b].imag();
  });

  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;  // kept sorted by real part
  for (std::size_t idx : order) {
    const double im = eigs[idx].imag();
    if (std::abs(im) <= thr) {
      out.real_indices.push_back(idx);
    } else if (im > 0.0) {
      upper.push_back(idx);
    } else {
      lower.push_back(idx);
    }
  }

  std::vector<bool> used(lower.size(), false);
  for (std::size_t i : upper) {
    const cplx target = std::conj(eigs[i]);
    auto first = std::lower_bound(lower.begin(), lower.end(), target.real() - thr,
                                  [&](std::size_t j, double x) { return eigs[j].real() < x; });
    std::size_t best = lower.size();
    double best_dist = INFINITY;
    for (auto it = first; it != lower.end() && eigs[*it].real() <= target.real() + thr; ++it) {
      const auto pos = static_cast<std::size_t>(it - lower.begin());
      if (used[pos]) continue;
      const double d = std::abs(eigs[*it] - target);
      if (d < best_dist) {
        best_dist = d;
        best = pos;
      }
    }
    if (best == lower.size() || best_dist > thr) {
      std::ostringstream msg;
      msg << "no conjugate partner within " << thr << " for " << eigs[i];
      throw ClassificationError(i, msg.str());
    }
    used[best] = true;
    out.pair_indices.emplace_back(i, lower[best]);
  }
  for (std::size_t pos = 0; pos < lower.size(); ++pos) {
    if (!used[pos]) {
      std::ostringstream msg;
      msg << "unpaired eigenvalue " << eigs[lower[pos]] << " in the lower half plane";
      throw ClassificationError(lower[pos], msg.str());
    }
  }

  std::sort(out.real_indices.begin(), out.real_indices.end());
  out.eigenvalues = std::move(eigs);
  return out;
}

}  // namespace pherm
