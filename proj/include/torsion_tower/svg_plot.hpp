#pragma once

// Standalone SVG plots of cover records: TR(M) against vol(M), and
// histograms of TR(M). Blue marks b_1 = 0, red marks b_1 > 0.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "torsion_tower/csv.hpp"
#include "torsion_tower/tr_stats.hpp"

namespace torsion_tower {

struct ScatterOptions {
  bool log_x = false;
  bool color_by_b1 = true;
  double width = 720;
  double height = 450;
  std::string title;
};

struct HistogramOptions {
  std::size_t bins = 20;
  bool split_by_b1 = true;
  double width = 720;
  double height = 450;
  std::string title;
};

inline constexpr const char* kBlue = "blue";
inline constexpr const char* kRed = "red";
inline constexpr const char* kNeutral = "gray";

namespace detail {

struct PlotFrame {
  double width, height;
  double left = 70, right = 20, top = 30, bottom = 55;
  double x0() const { return left; }
  double x1() const { return width - right; }
  double y0() const { return height - bottom; }  // bottom edge in SVG coordinates
  double y1() const { return top; }
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

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

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

/// Ticks at multiples of 1, 2 or 5 times a power of ten, about `target` of them.
inline std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (span / step <= target) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + step * 1e-9; t += step) ticks.push_back(t);
  return ticks;
}

inline void open_svg(std::ostringstream& out, const PlotFrame& f, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(f.width) << "\" height=\"" << fmt(f.height)
      << "\" viewBox=\"0 0 " << fmt(f.width) << ' ' << fmt(f.height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(f.width) << "\" height=\"" << fmt(f.height) << "\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << fmt(f.width / 2) << "\" y=\"18\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";
  out << "<rect class=\"frame\" x=\"" << fmt(f.x0()) << "\" y=\"" << fmt(f.y1()) << "\" width=\"" << fmt(f.x1() - f.x0())
      << "\" height=\"" << fmt(f.y0() - f.y1()) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

inline void axis_labels(std::ostringstream& out, const PlotFrame& f, const std::string& x, const std::string& y) {
  out << "<text class=\"axis-label\" x=\"" << fmt((f.x0() + f.x1()) / 2) << "\" y=\"" << fmt(f.height - 12)
      << "\" text-anchor=\"middle\">" << x << "</text>\n";
  out << "<text class=\"axis-label\" x=\"16\" y=\"" << fmt((f.y0() + f.y1()) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt((f.y0() + f.y1()) / 2) << ")\">" << y << "</text>\n";
}

inline void x_tick(std::ostringstream& out, const PlotFrame& f, double px, const std::string& label_markup) {
  out << "<line class=\"tick\" x1=\"" << fmt(px) << "\" y1=\"" << fmt(f.y0()) << "\" x2=\"" << fmt(px) << "\" y2=\""
      << fmt(f.y0() + 5) << "\" stroke=\"black\"/>\n";
  out << "<text class=\"x-tick\" x=\"" << fmt(px) << "\" y=\"" << fmt(f.y0() + 18) << "\" text-anchor=\"middle\">"
      << label_markup << "</text>\n";
}

inline void y_tick(std::ostringstream& out, const PlotFrame& f, double py, const std::string& label) {
  out << "<line class=\"tick\" x1=\"" << fmt(f.x0() - 5) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(f.x0()) << "\" y2=\""
      << fmt(py) << "\" stroke=\"black\"/>\n";
  out << "<text class=\"y-tick\" x=\"" << fmt(f.x0() - 8) << "\" y=\"" << fmt(py + 4) << "\" text-anchor=\"end\">" << label
      << "</text>\n";
}

}  // namespace detail

inline std::string render_scatter_svg(const std::vector<CoverRecord>& records, const ScatterOptions& opts = {}) {
  std::vector<const CoverRecord*> pts;
  for (const auto& r : records)
    if (r.ok() && std::isfinite(r.tr) && r.volume > 0) pts.push_back(&r);
  if (pts.empty()) throw Error(ErrorCode::NoPlottableRecords, "no successful records to plot");

  double vmin = std::numeric_limits<double>::infinity(), vmax = 0;
  double tmin = 1, tmax = 1;  // the reference line is always in range
  for (const auto* r : pts) {
    vmin = std::min(vmin, r->volume);
    vmax = std::max(vmax, r->volume);
    tmin = std::min(tmin, r->tr);
    tmax = std::max(tmax, r->tr);
  }
  const double tpad = std::max(0.05, 0.05 * (tmax - tmin));
  tmin -= tpad;
  tmax += tpad;

  double xlo, xhi;
  if (opts.log_x) {
    xlo = std::floor(std::log10(vmin));
    xhi = std::ceil(std::log10(vmax));
    if (xhi <= xlo) xhi = xlo + 1;
  } else {
    xlo = 0;
    xhi = vmax * 1.05;
  }

  const detail::PlotFrame f{opts.width, opts.height};
  auto px = [&](double vol) {
    const double x = opts.log_x ? std::log10(vol) : vol;
    return f.x0() + (x - xlo) / (xhi - xlo) * (f.x1() - f.x0());
  };
  auto py = [&](double tr) { return f.y0() - (tr - tmin) / (tmax - tmin) * (f.y0() - f.y1()); };

  std::ostringstream out;
  detail::open_svg(out, f, opts.title);
  if (opts.log_x) {
    for (int e = static_cast<int>(xlo); e <= static_cast<int>(xhi); ++e)
      detail::x_tick(out, f, px(std::pow(10.0, e)), "10<tspan dy=\"-5\" font-size=\"8\">" + std::to_string(e) + "</tspan>");
  } else {
    for (double t : detail::nice_ticks(xlo, xhi)) detail::x_tick(out, f, px(t), detail::tick_label(t));
  }
  for (double t : detail::nice_ticks(tmin, tmax)) detail::y_tick(out, f, py(t), detail::tick_label(t));
  out << "<line class=\"reference\" x1=\"" << detail::fmt(f.x0()) << "\" y1=\"" << detail::fmt(py(1.0)) << "\" x2=\""
      << detail::fmt(f.x1()) << "\" y2=\"" << detail::fmt(py(1.0)) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto* r : pts) {
    const char* color = !opts.color_by_b1 ? kNeutral : (plot_class(*r) == PlotClass::Blue ? kBlue : kRed);
    out << "<circle cx=\"" << detail::fmt(px(r->volume)) << "\" cy=\"" << detail::fmt(py(r->tr)) << "\" r=\"2.5\" fill=\""
        << color << "\"/>\n";
  }
  detail::axis_labels(out, f, "vol(M)", "TR(M)");
  out << "</svg>\n";
  return out.str();
}

inline void emit_scatter_svg(const std::vector<CoverRecord>& records, const std::string& path, const ScatterOptions& opts = {}) {
  write_file_atomically(path, render_scatter_svg(records, opts));
}

struct HistogramSeries {
  std::string color;
  std::vector<std::size_t> counts;
};

struct Histogram {
  double lo = 0, hi = 1;
  std::vector<HistogramSeries> series;
};

/// Bins TR over [min, max]; the top edge belongs to the last bin.
inline Histogram bin_tr_values(const std::vector<CoverRecord>& records, const HistogramOptions& opts) {
  if (opts.bins == 0) throw Error(ErrorCode::InvalidArgument, "histogram needs at least one bin");
  std::vector<const CoverRecord*> pts;
  for (const auto& r : records)
    if (r.ok() && std::isfinite(r.tr)) pts.push_back(&r);
  if (pts.empty()) throw Error(ErrorCode::NoPlottableRecords, "no successful records to plot");
  Histogram h;
  h.lo = h.hi = pts.front()->tr;
  for (const auto* r : pts) {
    h.lo = std::min(h.lo, r->tr);
    h.hi = std::max(h.hi, r->tr);
  }
  if (h.hi == h.lo) {
    h.lo -= 0.5;
    h.hi += 0.5;
  }
  if (opts.split_by_b1) h.series = {{kBlue, std::vector<std::size_t>(opts.bins, 0)}, {kRed, std::vector<std::size_t>(opts.bins, 0)}};
  else h.series = {{kNeutral, std::vector<std::size_t>(opts.bins, 0)}};
  for (const auto* r : pts) {
    auto bin = static_cast<std::size_t>((r->tr - h.lo) / (h.hi - h.lo) * static_cast<double>(opts.bins));
    bin = std::min(bin, opts.bins - 1);
    const std::size_t s = opts.split_by_b1 && plot_class(*r) == PlotClass::Red ? 1 : 0;
    ++h.series[s].counts[bin];
  }
  return h;
}

inline std::string render_histogram_svg(const std::vector<CoverRecord>& records, const HistogramOptions& opts = {}) {
  const Histogram h = bin_tr_values(records, opts);
  std::size_t cmax = 1;
  for (const auto& s : h.series)
    for (std::size_t c : s.counts) cmax = std::max(cmax, c);

  const detail::PlotFrame f{opts.width, opts.height};
  const double ymax = static_cast<double>(cmax) * 1.05;
  auto px = [&](double tr) { return f.x0() + (tr - h.lo) / (h.hi - h.lo) * (f.x1() - f.x0()); };
  auto py = [&](double c) { return f.y0() - c / ymax * (f.y0() - f.y1()); };

  std::ostringstream out;
  detail::open_svg(out, f, opts.title);
  for (double t : detail::nice_ticks(h.lo, h.hi)) detail::x_tick(out, f, px(t), detail::tick_label(t));
  for (double t : detail::nice_ticks(0, ymax))
    if (t == std::floor(t)) detail::y_tick(out, f, py(t), detail::tick_label(t));
  const double bw = (h.hi - h.lo) / static_cast<double>(opts.bins);
  for (const auto& s : h.series) {
    out << "<g class=\"series\" fill=\"" << s.color << "\" fill-opacity=\"0.6\" stroke=\"" << s.color << "\">\n";
    for (std::size_t b = 0; b < s.counts.size(); ++b) {
      if (s.counts[b] == 0) continue;
      const double xa = px(h.lo + bw * static_cast<double>(b));
      const double xb = px(h.lo + bw * static_cast<double>(b + 1));
      out << "<rect class=\"bar\" data-count=\"" << s.counts[b] << "\" x=\"" << detail::fmt(xa) << "\" y=\""
          << detail::fmt(py(static_cast<double>(s.counts[b]))) << "\" width=\"" << detail::fmt(xb - xa) << "\" height=\""
          << detail::fmt(f.y0() - py(static_cast<double>(s.counts[b]))) << "\"/>\n";
    }
    out << "</g>\n";
  }
  detail::axis_labels(out, f, "TR(M)", "count");
  out << "</svg>\n";
  return out.str();
}

inline void emit_histogram_svg(const std::vector<CoverRecord>& records, const std::string& path,
                               const HistogramOptions& opts = {}) {
  write_file_atomically(path, render_histogram_svg(records, opts));
}

}  // namespace torsion_tower
