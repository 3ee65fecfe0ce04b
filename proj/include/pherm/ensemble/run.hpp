#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "pherm/analytic/green.hpp"
#include "pherm/ensemble/config.hpp"
#include "pherm/ensemble/histogram.hpp"
#include "pherm/ensemble/serialize.hpp"
#include "pherm/error.hpp"
#include "pherm/io/hash.hpp"
#include "pherm/linalg/eigen.hpp"
#include "pherm/linalg/gue.hpp"
#include "pherm/linalg/metric.hpp"
#include "pherm/linalg/spectrum.hpp"
#include "pherm/parallel.hpp"
#include "pherm/random.hpp"

namespace pherm {

struct RunArtifact {
  RunConfig config;
  std::string input_hash;
  std::string content_hash;
  std::vector<Spectrum> spectra;  ///< empty unless config.keep_spectra
  std::vector<std::size_t> real_counts;
  Histogram1D hist1d;
  Histogram2D hist2d;
  /// Samples whose real count fell below |n - 2k| (t < 0, t != -1 only; at
  /// t = -1 a violation aborts the run).
  std::vector<std::size_t> carlson_violations;
  double wall_seconds = 0.0;

  std::size_t n() const noexcept { return config.model.metric.n(); }
  std::size_t samples() const noexcept { return real_counts.size(); }
};

/// One sample: draw A, form phi = A B, diagonalize and classify.
inline Spectrum sample_spectrum(const ModelParams& model, std::uint64_t sample_index, EigenBackend backend,
                                double tol = default_classification_tol) {
  Rng rng = make_substream(model.seed, sample_index);
  const HermitianMatrix a = sample_gue(model.metric.n(), model.m, rng);
  const ComplexMatrix phi = build_phi(a, model.metric);
  return classify_spectrum(eigenvalues(phi, backend), tol);
}

namespace detail {

inline void hash_bytes(Sha256& h, const void* p, std::size_t n) {
  h.update(std::string_view(static_cast<const char*>(p), n));
}

}  // namespace detail

/// Predicted half-width of the spectrum, or 0 when nothing is known.
inline double predicted_extent(const ModelParams& model) {
  const double lambda = model.metric.lambda();
  const double t = model.metric.t();
  double e = 0.0;
  for (const Interval& iv : support_intervals(lambda, t, model.m).intervals)
    e = std::max({e, std::abs(iv.lo), std::abs(iv.hi)});
  if (t == -1.0 && lambda > 0.0 && lambda < 1.0) e = std::max(e, 1.0 / model.m);
  return e;
}

/// Sample, diagonalize, classify and aggregate. The result depends only on
/// the config (not on the worker count or scheduling).
inline RunArtifact run_ensemble(const RunConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const MetricSpec& metric = config.model.metric;
  const std::size_t n = metric.n();

  std::vector<Spectrum> spectra(config.samples);
  detail::parallel_for(config.samples, config.workers, [&](std::size_t i) {
    spectra[i] = sample_spectrum(config.model, i, config.backend, config.classification_tol);
  });

  RunArtifact art;
  art.config = config;
  art.input_hash = sha256_hex(canonical_inputs(config));

  double observed = 0.0;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const Spectrum& s = spectra[i];
    if (s.size() != n || s.real_count() + s.complex_count() != n)
      throw SampleError(i, "eigenvalue bookkeeping mismatch");
    if (metric.t() < 0.0 && s.real_count() < metric.carlson_bound()) {
      const std::string msg = "Carlson bound violated: " + std::to_string(s.real_count()) + " real eigenvalues < " +
                              std::to_string(metric.carlson_bound());
      if (metric.t() == -1.0) throw SampleError(i, msg);
      std::cerr << "warning: sample " << i << ": " << msg << '\n';
      art.carlson_violations.push_back(i);
    }
    art.real_counts.push_back(s.real_count());
    for (const cplx& z : s.eigenvalues) observed = std::max({observed, std::abs(z.real()), std::abs(z.imag())});
  }

  const double extent = 1.2 * std::max(predicted_extent(config.model), observed);
  const Range1D range = config.range_1d.value_or(Range1D{-extent, extent});
  const Window2D window = config.window_2d.value_or(Window2D::square(extent));
  art.hist1d = Histogram1D(range, config.bins_1d);
  art.hist2d = Histogram2D(window, config.bins_2d_x, config.bins_2d_y);

  Sha256 content;
  for (const Spectrum& s : spectra) {
    for (std::size_t i : s.real_indices) art.hist1d.add(s.eigenvalues[i].real());
    for (auto [i, j] : s.pair_indices) {
      art.hist2d.add(s.eigenvalues[i]);
      art.hist2d.add(std::conj(s.eigenvalues[i]));
    }
    const auto mask = s.real_mask();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double re = s.eigenvalues[i].real();
      const double im = s.eigenvalues[i].imag();
      const char cls = mask[i] ? 'R' : 'C';
      detail::hash_bytes(content, &re, sizeof re);
      detail::hash_bytes(content, &im, sizeof im);
      detail::hash_bytes(content, &cls, 1);
    }
  }
  const std::uint64_t total = static_cast<std::uint64_t>(n) * config.samples;
  art.hist1d.normalize(total);
  art.hist2d.normalize(total);
  content.update(hist1d_csv(art.hist1d)).update(hist2d_csv(art.hist2d));
  art.content_hash = content.hex();

  if (config.keep_spectra) art.spectra = std::move(spectra);
  art.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return art;
}

}  // namespace pherm
