#pragma once

// Static SVG 1.1 figures: axes, scatter, polylines, polygons and heatmap cells.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <utility>
#include <string>
#include <vector>

#include "pherm/io/format.hpp"

namespace pherm::io {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class SvgPlot {
 public:
  SvgPlot(double xlo, double xhi, double ylo, double yhi, std::string title, std::string xlabel = "x",
          std::string ylabel = "y", double width = 640, double height = 480)
      : xlo_(xlo), xhi_(xhi), ylo_(ylo), yhi_(yhi), w_(width), h_(height),
        title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {
    if (!(xhi_ > xlo_)) xhi_ = xlo_ + 1.0;
    if (!(yhi_ > ylo_)) yhi_ = ylo_ + 1.0;
  }

  /// Equal scale on both axes (for complex-plane scatters).
  SvgPlot& equal_aspect() {
    const double sx = (w_ - left_ - right_) / (xhi_ - xlo_);
    const double sy = (h_ - top_ - bottom_) / (yhi_ - ylo_);
    const double s = std::min(sx, sy);
    const double cx = 0.5 * (xlo_ + xhi_);
    const double cy = 0.5 * (ylo_ + yhi_);
    const double hx = 0.5 * (w_ - left_ - right_) / s;
    const double hy = 0.5 * (h_ - top_ - bottom_) / s;
    xlo_ = cx - hx;
    xhi_ = cx + hx;
    ylo_ = cy - hy;
    yhi_ = cy + hy;
    return *this;
  }

  void points(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& color,
              double radius = 1.2) {
    std::string s = "<g fill=\"" + color + "\" stroke=\"none\">\n";
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
      if (!inside(xs[i], ys[i])) continue;
      s += "<circle cx=\"" + fmt_short(px(xs[i])) + "\" cy=\"" + fmt_short(py(ys[i])) + "\" r=\"" + fmt_short(radius) +
           "\"/>\n";
    }
    body_ += s + "</g>\n";
  }

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& color,
                double stroke = 1.5, const std::string& dash = "") {
    if (xs.size() < 2) return;
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt_short(stroke) + "\"";
    if (!dash.empty()) s += " stroke-dasharray=\"" + dash + "\"";
    s += " points=\"";
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i)
      s += fmt_short(px(clampx(xs[i]))) + "," + fmt_short(py(clampy(ys[i]))) + " ";
    body_ += s + "\"/>\n";
  }

  void polygon(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& fill,
               double opacity = 0.4) {
    if (xs.size() < 3) return;
    std::string s = "<polygon stroke=\"none\" fill=\"" + fill + "\" fill-opacity=\"" + fmt_short(opacity) + "\" points=\"";
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i)
      s += fmt_short(px(clampx(xs[i]))) + "," + fmt_short(py(clampy(ys[i]))) + " ";
    body_ += s + "\"/>\n";
  }

  /// Filled data-space rectangle [x0,x1] x [y0,y1].
  void rect(double x0, double x1, double y0, double y1, const std::string& fill, double opacity = 1.0) {
    const double a = px(clampx(x0));
    const double b = px(clampx(x1));
    const double c = py(clampy(y1));
    const double d = py(clampy(y0));
    body_ += "<rect x=\"" + fmt_short(a) + "\" y=\"" + fmt_short(c) + "\" width=\"" + fmt_short(b - a) +
             "\" height=\"" + fmt_short(d - c) + "\" fill=\"" + fill + "\" fill-opacity=\"" + fmt_short(opacity) +
             "\" stroke=\"none\"/>\n";
  }

  /// Histogram bars from bin edges and heights.
  void bars(const std::vector<double>& edges, const std::vector<double>& heights, const std::string& fill) {
    for (std::size_t i = 0; i + 1 < edges.size() && i < heights.size(); ++i)
      if (heights[i] > 0.0) rect(edges[i], edges[i + 1], 0.0, heights[i], fill, 0.6);
  }

  void text(double x, double y, const std::string& label, const std::string& color = "#000") {
    body_ += "<text x=\"" + fmt_short(px(x)) + "\" y=\"" + fmt_short(py(y)) + "\" font-size=\"11\" fill=\"" + color +
             "\">" + xml_escape(label) + "</text>\n";
  }

  /// Note printed under the title.
  void note(const std::string& s) { notes_.push_back(s); }

  void legend(const std::string& label, const std::string& color) { legend_.push_back({label, color}); }

  std::string str() const {
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt_short(w_) + "\" height=\"" +
         fmt_short(h_) + "\" viewBox=\"0 0 " + fmt_short(w_) + " " + fmt_short(h_) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += axes();
    s += "<g clip-path=\"url(#plotarea)\">\n" + body_ + "</g>\n";
    s += "<text x=\"" + fmt_short(w_ / 2) + "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(title_) + "</text>\n";
    double ny = 34;
    for (const auto& n : notes_) {
      s += "<text x=\"" + fmt_short(w_ / 2) + "\" y=\"" + fmt_short(ny) +
           "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#a00\">" + xml_escape(n) + "</text>\n";
      ny += 13;
    }
    double ly = top_ + 14;
    for (const auto& [label, color] : legend_) {
      s += "<rect x=\"" + fmt_short(w_ - right_ - 130) + "\" y=\"" + fmt_short(ly - 9) +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
      s += "<text x=\"" + fmt_short(w_ - right_ - 115) + "\" y=\"" + fmt_short(ly) + "\" font-size=\"11\">" +
           xml_escape(label) + "</text>\n";
      ly += 14;
    }
    s += "</svg>\n";
    return s;
  }

 private:
  double px(double x) const { return left_ + (x - xlo_) / (xhi_ - xlo_) * (w_ - left_ - right_); }
  double py(double y) const { return h_ - bottom_ - (y - ylo_) / (yhi_ - ylo_) * (h_ - top_ - bottom_); }
  double clampx(double x) const { return std::clamp(x, xlo_, xhi_); }
  double clampy(double y) const { return std::clamp(y, ylo_, yhi_); }
  bool inside(double x, double y) const { return x >= xlo_ && x <= xhi_ && y >= ylo_ && y <= yhi_; }

  static std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0})
      if (f * mag >= raw) {
        step = f * mag;
        break;
      }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
  }

  std::string axes() const {
    const double x0 = left_;
    const double x1 = w_ - right_;
    const double y0 = h_ - bottom_;
    const double y1 = top_;
    std::string s = "<defs><clipPath id=\"plotarea\"><rect x=\"" + fmt_short(x0) + "\" y=\"" + fmt_short(y1) +
                    "\" width=\"" + fmt_short(x1 - x0) + "\" height=\"" + fmt_short(y0 - y1) +
                    "\"/></clipPath></defs>\n";
    s += "<rect x=\"" + fmt_short(x0) + "\" y=\"" + fmt_short(y1) + "\" width=\"" + fmt_short(x1 - x0) +
         "\" height=\"" + fmt_short(y0 - y1) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : ticks(xlo_, xhi_)) {
      const double p = px(t);
      s += "<line x1=\"" + fmt_short(p) + "\" y1=\"" + fmt_short(y0) + "\" x2=\"" + fmt_short(p) + "\" y2=\"" +
           fmt_short(y0 + 4) + "\" stroke=\"#444\"/>\n";
      s += "<text x=\"" + fmt_short(p) + "\" y=\"" + fmt_short(y0 + 16) + "\" text-anchor=\"middle\" font-size=\"10\">" +
           fmt_short(t) + "</text>\n";
    }
    for (double t : ticks(ylo_, yhi_)) {
      const double p = py(t);
      s += "<line x1=\"" + fmt_short(x0 - 4) + "\" y1=\"" + fmt_short(p) + "\" x2=\"" + fmt_short(x0) + "\" y2=\"" +
           fmt_short(p) + "\" stroke=\"#444\"/>\n";
      s += "<text x=\"" + fmt_short(x0 - 6) + "\" y=\"" + fmt_short(p + 3) + "\" text-anchor=\"end\" font-size=\"10\">" +
           fmt_short(t) + "</text>\n";
    }
    s += "<text x=\"" + fmt_short((x0 + x1) / 2) + "\" y=\"" + fmt_short(h_ - 8) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + xml_escape(xlabel_) + "</text>\n";
    s += "<text x=\"14\" y=\"" + fmt_short((y0 + y1) / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
         fmt_short((y0 + y1) / 2) + ")\">" + xml_escape(ylabel_) + "</text>\n";
    return s;
  }

  double xlo_, xhi_, ylo_, yhi_, w_, h_;
  double left_ = 60, right_ = 20, top_ = 50, bottom_ = 45;
  std::string title_, xlabel_, ylabel_;
  std::string body_;
  std::vector<std::string> notes_;
  std::vector<std::pair<std::string, std::string>> legend_;
};

/// Linear white-to-blue ramp for heatmaps; v in [0, 1].
inline std::string heat_color(double v) {
  v = std::clamp(v, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * (1.0 - 0.85 * v)));
  const int g = static_cast<int>(std::lround(255 * (1.0 - 0.7 * v)));
  const int b = 255;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace pherm::io
