#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nlwave/bench.hpp"

namespace nlwave {

namespace {

// Plot geometry (pixels). The right margin holds the legend.
constexpr double kW = 720.0, kH = 540.0;
constexpr double kML = 70.0, kMR = 178.0, kMT = 42.0, kMB = 56.0;
constexpr double kPW = kW - kML - kMR;
constexpr double kPH = kH - kMT - kMB;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return std::string(buf);
}

struct Series {
  std::vector<std::pair<double, double>> pts;  // (log2 tau, log2 err)
};

std::string polyline(const Series& s, const std::string& color,
                     const std::function<double(double)>& px,
                     const std::function<double(double)>& py) {
  if (s.pts.empty()) return "";
  std::string d;
  for (std::size_t i = 0; i < s.pts.size(); ++i) {
    d += (i == 0 ? "M" : " L");
    d += num(px(s.pts[i].first));
    d += ' ';
    d += num(py(s.pts[i].second));
  }
  return "  <path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"1.5\"/>\n";
}

std::string find_value(const ConvergenceReport& r, const std::string& key) {
  for (const auto& [k, v] : r.manifest) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

std::string convergence_svg(const ConvergenceReport& report) {
  Series s1, s2;
  for (const ConvergenceRow& r : report.rows) {
    const double x = std::log2(r.tau);
    if (std::isfinite(r.err_l2hm1) && r.err_l2hm1 > 0.0) {
      s1.pts.emplace_back(x, std::log2(r.err_l2hm1));
    }
    if (std::isfinite(r.err_h1l2) && r.err_h1l2 > 0.0) {
      s2.pts.emplace_back(x, std::log2(r.err_h1l2));
    }
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) +
         "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " + num(kH) +
         "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  if (s1.pts.empty() && s2.pts.empty()) {
    svg += "  <text x=\"" + num(kW / 2) + "\" y=\"" + num(kH / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">no "
           "plottable rows</text>\n</svg>\n";
    return svg;
  }

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series* s : {&s1, &s2}) {
    for (const auto& [x, y] : s->pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax - xmin < 1e-9) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  xmin -= 0.4;
  xmax += 0.4;
  ymin -= 0.6;
  ymax += 0.6;

  auto px = [&](double x) { return kML + (x - xmin) / (xmax - xmin) * kPW; };
  auto py = [&](double y) { return kMT + (ymax - y) / (ymax - ymin) * kPH; };

  // Grid and ticks at integer log2 values.
  for (int t = static_cast<int>(std::ceil(xmin)); t <= static_cast<int>(std::floor(xmax));
       ++t) {
    const double x = px(t);
    svg += "  <line x1=\"" + num(x) + "\" y1=\"" + num(kMT) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kMT + kPH) + "\" stroke=\"#e6e6e6\"/>\n";
    svg += "  <text x=\"" + num(x) + "\" y=\"" + num(kMT + kPH + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(t) + "</text>\n";
  }
  for (int t = static_cast<int>(std::ceil(ymin)); t <= static_cast<int>(std::floor(ymax));
       ++t) {
    const double y = py(t);
    svg += "  <line x1=\"" + num(kML) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kML + kPW) + "\" y2=\"" + num(y) + "\" stroke=\"#e6e6e6\"/>\n";
    svg += "  <text x=\"" + num(kML - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(t) + "</text>\n";
  }
  svg += "  <rect x=\"" + num(kML) + "\" y=\"" + num(kMT) + "\" width=\"" + num(kPW) +
         "\" height=\"" + num(kPH) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Reference slopes 1 and 3/2 anchored below the coarsest point of series 1.
  if (!s1.pts.empty()) {
    const auto anchor =
        *std::max_element(s1.pts.begin(), s1.pts.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
    for (double slope : {1.0, 1.5}) {
      const double y0 = anchor.second - 1.0 + slope * (xmin - anchor.first);
      const double y1 = anchor.second - 1.0 + slope * (xmax - anchor.first);
      svg += "  <line x1=\"" + num(px(xmin)) + "\" y1=\"" + num(py(y0)) + "\" x2=\"" +
             num(px(xmax)) + "\" y2=\"" + num(py(y1)) +
             "\" stroke=\"#999999\" stroke-dasharray=\"2,3\"/>\n";
    }
  }

  // Fitted line (intercept recomputed from the rows used by the fit).
  if (report.fit_valid) {
    long double sx = 0.0L, sy = 0.0L;
    int n = 0;
    for (const ConvergenceRow& r : report.rows) {
      if (!std::isfinite(r.err_l2hm1) || r.err_l2hm1 <= 1e-10) continue;
      sx += std::log2(r.tau);
      sy += std::log2(r.err_l2hm1);
      ++n;
    }
    if (n > 0) {
      const double intercept =
          static_cast<double>(sy / n) - report.fit.slope * static_cast<double>(sx / n);
      const double y0 = intercept + report.fit.slope * xmin;
      const double y1 = intercept + report.fit.slope * xmax;
      svg += "  <line x1=\"" + num(px(xmin)) + "\" y1=\"" + num(py(y0)) + "\" x2=\"" +
             num(px(xmax)) + "\" y2=\"" + num(py(y1)) +
             "\" stroke=\"#222222\" stroke-dasharray=\"6,4\"/>\n";
    }
  }

  auto px_fn = std::function<double(double)>(px);
  auto py_fn = std::function<double(double)>(py);
  svg += polyline(s1, "#1f6fb4", px_fn, py_fn);
  svg += polyline(s2, "#d1495b", px_fn, py_fn);
  for (const auto& [x, y] : s1.pts) {
    svg += "  <circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
           "\" r=\"4\" fill=\"#1f6fb4\"/>\n";
  }
  for (const auto& [x, y] : s2.pts) {
    svg += "  <rect x=\"" + num(px(x) - 3.5) + "\" y=\"" + num(py(y) - 3.5) +
           "\" width=\"7\" height=\"7\" fill=\"#d1495b\"/>\n";
  }

  // Axis labels and title.
  const std::string title = find_value(report, "kind") + " " +
                            find_value(report, "scheme") + "  alpha=" +
                            find_value(report, "alpha") + "  n=" +
                            find_value(report, "n");
  svg += "  <text x=\"" + num(kML + kPW / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
  svg += "  <text x=\"" + num(kML + kPW / 2) + "\" y=\"" + num(kH - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">log2(tau)</text>\n";
  svg += "  <text x=\"20\" y=\"" + num(kMT + kPH / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 20 " + num(kMT + kPH / 2) +
         ")\">log2(error)</text>\n";

  // Legend.
  const double lx = kML + kPW + 14.0;
  double ly = kMT + 10.0;
  auto legend_row = [&](const std::string& marker, const std::string& label) {
    svg += marker;
    svg += "  <text x=\"" + num(lx + 16) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
    ly += 18.0;
  };
  legend_row("  <circle cx=\"" + num(lx + 4) + "\" cy=\"" + num(ly) +
                 "\" r=\"4\" fill=\"#1f6fb4\"/>\n",
             "L2 x H^-1 error");
  legend_row("  <rect x=\"" + num(lx) + "\" y=\"" + num(ly - 3.5) +
                 "\" width=\"7\" height=\"7\" fill=\"#d1495b\"/>\n",
             "H^1 x L2 error");
  if (report.fit_valid) {
    char fit_label[64];
    std::snprintf(fit_label, sizeof(fit_label), "fit slope %.3f", report.fit.slope);
    legend_row("  <line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" +
                   num(lx + 10) + "\" y2=\"" + num(ly) +
                   "\" stroke=\"#222222\" stroke-dasharray=\"6,4\"/>\n",
               fit_label);
  }
  legend_row("  <line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" +
                 num(lx + 10) + "\" y2=\"" + num(ly) +
                 "\" stroke=\"#999999\" stroke-dasharray=\"2,3\"/>\n",
             "slopes 1, 3/2");

  svg += "</svg>\n";
  return svg;
}

}  // namespace nlwave
