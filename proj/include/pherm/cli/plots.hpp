#pragma once

// Figures are rendered from the CSV files on disk only, so re-rendering an
// output directory reproduces them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pherm/ensemble/persist.hpp"
#include "pherm/io/csv.hpp"
#include "pherm/io/format.hpp"
#include "pherm/io/svg.hpp"

namespace pherm::cli {

namespace fs = std::filesystem;

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#1f4e9e", "#c0392b", "#27864a", "#8e44ad", "#d35400", "#2c3e50"};
  return p;
}

/// Closed outline of one blob: outer arc forward, inner arc backward.
struct Outline {
  double lambda;
  std::vector<double> xs;
  std::vector<double> ys;
};

inline std::vector<Outline> read_boundary_outlines(const fs::path& csv) {
  const io::CsvTable t = io::read_csv(csv);
  const auto lambda = t.numbers("lambda");
  const auto blob = t.numbers("blob");
  const auto theta = t.numbers("theta");
  const auto rm = t.numbers("r_minus");
  const auto rp = t.numbers("r_plus");
  std::vector<Outline> out;
  std::size_t i = 0;
  while (i < lambda.size()) {
    std::size_t j = i;
    while (j < lambda.size() && lambda[j] == lambda[i] && blob[j] == blob[i]) ++j;
    Outline o{lambda[i], {}, {}};
    for (std::size_t p = i; p < j; ++p) {
      o.xs.push_back(rp[p] * std::cos(theta[p]));
      o.ys.push_back(rp[p] * std::sin(theta[p]));
    }
    for (std::size_t p = j; p-- > i;) {
      o.xs.push_back(rm[p] * std::cos(theta[p]));
      o.ys.push_back(rm[p] * std::sin(theta[p]));
    }
    if (!o.xs.empty()) {
      o.xs.push_back(o.xs.front());
      o.ys.push_back(o.ys.front());
    }
    out.push_back(std::move(o));
    i = j;
  }
  return out;
}

/// scatter.svg from eigenvalues.csv, plus support.csv and boundary.csv when present.
inline void render_spectrum(const fs::path& dir, const std::string& title) {
  const io::CsvTable t = io::read_csv(dir / "eigenvalues.csv");
  const auto re = t.numbers("re");
  const auto im = t.numbers("im");
  const auto cls = t.strings("class");
  double extent = 0.0;
  for (std::size_t i = 0; i < re.size(); ++i) extent = std::max({extent, std::abs(re[i]), std::abs(im[i])});
  std::vector<Outline> outlines;
  if (fs::exists(dir / "boundary.csv")) outlines = read_boundary_outlines(dir / "boundary.csv");
  for (const auto& o : outlines)
    for (std::size_t i = 0; i < o.xs.size(); ++i) extent = std::max({extent, std::abs(o.xs[i]), std::abs(o.ys[i])});
  std::vector<double> lo;
  std::vector<double> hi;
  if (fs::exists(dir / "support.csv")) {
    const io::CsvTable s = io::read_csv(dir / "support.csv");
    lo = s.numbers("lo");
    hi = s.numbers("hi");
    for (std::size_t i = 0; i < lo.size(); ++i) extent = std::max({extent, std::abs(lo[i]), std::abs(hi[i])});
  }
  if (extent == 0.0) extent = 1.0;
  extent *= 1.1;

  io::SvgPlot plot(-extent, extent, -extent, extent, title, "Re", "Im", 640, 600);
  plot.equal_aspect();
  for (std::size_t i = 0; i < lo.size(); ++i) plot.polyline({lo[i], hi[i]}, {0.0, 0.0}, "#f39c12", 5.0);
  std::vector<double> rx, ry, cx, cy;
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (cls[i] == "R") {
      rx.push_back(re[i]);
      ry.push_back(im[i]);
    } else {
      cx.push_back(re[i]);
      cy.push_back(im[i]);
    }
  }
  plot.points(cx, cy, "#1f4e9e", 1.2);
  plot.points(rx, ry, "#c0392b", 1.4);
  for (const auto& o : outlines) plot.polyline(o.xs, o.ys, "#000", 1.2);
  plot.legend("complex", "#1f4e9e");
  plot.legend("real", "#c0392b");
  if (!lo.empty()) plot.legend("predicted real support", "#f39c12");
  if (!outlines.empty()) {
    plot.legend("predicted boundary", "#000");
  } else {
    plot.note("analytic boundary unavailable (closed form known only at t = -1)");
  }
  write_text_file(dir / "scatter.svg", plot.str());
}

/// density.svg from density.csv and, when present, hist1d.csv.
inline void render_density(const fs::path& dir, const std::string& title) {
  const io::CsvTable d = io::read_csv(dir / "density.csv");
  const auto x = d.numbers("x");
  const auto rho = d.numbers("rho");
  double ymax = *std::max_element(rho.begin(), rho.end());
  double xlo = x.front();
  double xhi = x.back();
  std::vector<double> edges, heights;
  if (fs::exists(dir / "hist1d.csv")) {
    const io::CsvTable h = io::read_csv(dir / "hist1d.csv");
    edges = h.numbers("bin_lo");
    const auto bhi = h.numbers("bin_hi");
    if (!bhi.empty()) edges.push_back(bhi.back());
    heights = h.numbers("density");
    for (double v : heights) ymax = std::max(ymax, v);
    if (!edges.empty()) {
      xlo = std::min(xlo, edges.front());
      xhi = std::max(xhi, edges.back());
    }
  }
  if (!(ymax > 0.0)) ymax = 1.0;
  io::SvgPlot plot(xlo, xhi, 0.0, 1.1 * ymax, title, "x", "density");
  if (!heights.empty()) {
    plot.bars(edges, heights, "#9ab5e0");
    plot.legend("Monte Carlo", "#9ab5e0");
  }
  plot.polyline(x, rho, "#c0392b", 1.8);
  plot.legend("large-N prediction", "#c0392b");
  write_text_file(dir / "density.svg", plot.str());
}

/// boundary.svg from boundary.csv (one outline per lambda and blob).
inline void render_boundary(const fs::path& dir, const std::string& title) {
  const auto outlines = read_boundary_outlines(dir / "boundary.csv");
  double extent = 0.0;
  for (const auto& o : outlines)
    for (std::size_t i = 0; i < o.xs.size(); ++i) extent = std::max({extent, std::abs(o.xs[i]), std::abs(o.ys[i])});
  if (extent == 0.0) extent = 1.0;
  extent *= 1.1;
  io::SvgPlot plot(-extent, extent, -extent, extent, title, "Re", "Im", 640, 600);
  plot.equal_aspect();
  std::map<double, std::string> colors;
  for (const auto& o : outlines) {
    if (!colors.count(o.lambda)) {
      colors[o.lambda] = palette()[colors.size() % palette().size()];
      plot.legend("lambda = " + io::fmt_short(o.lambda), colors[o.lambda]);
    }
    plot.polyline(o.xs, o.ys, colors[o.lambda], 1.5);
  }
  write_text_file(dir / "boundary.svg", plot.str());
}

/// fraction.svg from fraction.csv and, when present, fraction_mc.csv.
inline void render_fraction(const fs::path& dir, const std::string& title) {
  const io::CsvTable f = io::read_csv(dir / "fraction.csv");
  io::SvgPlot plot(0.0, 1.0, 0.0, 1.05, title, "lambda", "fraction of real eigenvalues");
  plot.polyline(f.numbers("lambda"), f.numbers("fraction"), "#c0392b", 1.8);
  plot.legend("large-N prediction", "#c0392b");
  if (f.header.size() > 2) {
    plot.polyline(f.numbers("lambda"), f.numbers("carlson_bound"), "#7f8c8d", 1.0, "4,3");
    plot.legend("|1 - 2 lambda|", "#7f8c8d");
  }
  if (fs::exists(dir / "fraction_mc.csv")) {
    const io::CsvTable mc = io::read_csv(dir / "fraction_mc.csv");
    const auto l = mc.numbers("lambda");
    const auto mean = mc.numbers("mean");
    const auto se = mc.numbers("std_error");
    for (std::size_t i = 0; i < l.size(); ++i)
      plot.polyline({l[i], l[i]}, {mean[i] - 2.0 * se[i], mean[i] + 2.0 * se[i]}, "#1f4e9e", 1.0);
    plot.points(l, mean, "#1f4e9e", 3.0);
    plot.legend("Monte Carlo", "#1f4e9e");
  }
  write_text_file(dir / "fraction.svg", plot.str());
}

/// phase.svg from phase_grid.csv, regions.csv and curves.csv.
inline void render_phase(const fs::path& dir, const std::string& title, double t_min) {
  io::SvgPlot plot(0.0, 1.0, t_min, 0.0, title, "lambda", "t");
  if (fs::exists(dir / "regions.csv")) {
    const io::CsvTable r = io::read_csv(dir / "regions.csv");
    const auto region = r.strings("region");
    const auto l = r.numbers("lambda");
    const auto t = r.numbers("t");
    std::size_t i = 0;
    while (i < region.size()) {
      std::size_t j = i;
      std::vector<double> xs, ys;
      while (j < region.size() && region[j] == region[i]) {
        xs.push_back(l[j]);
        ys.push_back(std::max(t[j], t_min));
        ++j;
      }
      const bool three = region[i] == "three_real_intervals";
      plot.polygon(xs, ys, three ? "#f39c12" : "#9ab5e0", three ? 0.6 : 0.4);
      i = j;
    }
    plot.legend("disconnected complex", "#9ab5e0");
    plot.legend("three real intervals", "#f39c12");
  }
  const io::CsvTable c = io::read_csv(dir / "curves.csv");
  const auto l = c.numbers("lambda");
  const std::vector<std::pair<std::string, std::string>> curves = {
      {"t_cr", "#c0392b"}, {"t_c", "#1f4e9e"}, {"t_r", "#27864a"}};
  for (const auto& [name, color] : curves) {
    const auto v = c.numbers(name);
    std::vector<double> xs, ys;
    auto flush = [&] {
      if (xs.size() > 1) plot.polyline(xs, ys, color, 1.6);
      xs.clear();
      ys.clear();
    };
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (std::isfinite(v[i]) && v[i] >= t_min) {
        xs.push_back(l[i]);
        ys.push_back(v[i]);
      } else {
        flush();
      }
    }
    flush();
    plot.legend(name, color);
  }
  plot.points({0.5}, {-1.0}, "#000", 3.0);
  write_text_file(dir / "phase.svg", plot.str());
}

/// spectrum.svg for the mechanical model from hist1d.csv.
inline void render_mech(const fs::path& dir, const std::string& title) {
  const io::CsvTable h = io::read_csv(dir / "hist1d.csv");
  auto edges = h.numbers("bin_lo");
  const auto hi = h.numbers("bin_hi");
  const auto dens = h.numbers("density");
  if (!hi.empty()) edges.push_back(hi.back());
  const double ymax = dens.empty() ? 1.0 : std::max(1e-12, *std::max_element(dens.begin(), dens.end()));
  io::SvgPlot plot(edges.front(), edges.back(), 0.0, 1.1 * ymax, title, "omega^2", "density");
  plot.bars(edges, dens, "#9ab5e0");
  write_text_file(dir / "spectrum.svg", plot.str());
}

}  // namespace pherm::cli
