#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pherm/ensemble/config.hpp"
#include "pherm/ensemble/histogram.hpp"
#include "pherm/io/format.hpp"
#include "pherm/linalg/spectrum.hpp"

namespace pherm {

/// Full RunConfig echo. The worker count is included for the record but is
/// not part of the input hash.
inline nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["n"] = c.model.metric.n();
  j["k"] = c.model.metric.k();
  j["lambda"] = c.model.metric.lambda();
  j["t"] = c.model.metric.t();
  j["m"] = c.model.m;
  j["seed"] = c.model.seed;
  j["samples"] = c.samples;
  j["bins_1d"] = c.bins_1d;
  j["bins_2d"] = {c.bins_2d_x, c.bins_2d_y};
  if (c.range_1d) j["range_1d"] = {c.range_1d->lo, c.range_1d->hi};
  if (c.window_2d) j["window_2d"] = {c.window_2d->re_lo, c.window_2d->re_hi, c.window_2d->im_lo, c.window_2d->im_hi};
  j["solver"] = to_string(c.backend);
  j["classification_tol"] = c.classification_tol;
  j["workers"] = c.workers;
  return j;
}

/// Canonical text of the inputs that determine a run's data.
inline std::string canonical_inputs(const RunConfig& c) {
  auto j = config_to_json(c);
  j.erase("workers");
  return j.dump();
}

inline std::string eigenvalues_csv(const std::vector<Spectrum>& spectra) {
  std::string s = "sample_index,re,im,class\n";
  for (std::size_t idx = 0; idx < spectra.size(); ++idx) {
    const auto mask = spectra[idx].real_mask();
    const auto& ev = spectra[idx].eigenvalues;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      s += std::to_string(idx);
      s += ',';
      s += io::fmt(ev[i].real());
      s += ',';
      s += io::fmt(ev[i].imag());
      s += mask[i] ? ",R\n" : ",C\n";
    }
  }
  return s;
}

inline std::string hist1d_csv(const Histogram1D& h) {
  std::string s = "bin_lo,bin_hi,count,density\n";
  for (std::size_t i = 0; i < h.bins(); ++i)
    s += io::fmt(h.edges[i]) + ',' + io::fmt(h.edges[i + 1]) + ',' + std::to_string(h.counts[i]) + ',' +
         io::fmt(h.density[i]) + '\n';
  return s;
}

inline std::string hist2d_csv(const Histogram2D& h) {
  std::string s = "ix,iy,re_lo,im_lo,count,density\n";
  for (std::size_t ix = 0; ix < h.nx; ++ix)
    for (std::size_t iy = 0; iy < h.ny; ++iy)
      s += std::to_string(ix) + ',' + std::to_string(iy) + ',' + io::fmt(h.re_lo(ix)) + ',' + io::fmt(h.im_lo(iy)) +
           ',' + std::to_string(h.count(ix, iy)) + ',' + io::fmt(h.density_at(ix, iy)) + '\n';
  return s;
}

}  // namespace pherm
