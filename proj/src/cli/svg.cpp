#include "cli/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace panelprec::cli {
namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 180, kTop = 40, kBottom = 60;

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  for (const auto& s : series)
    for (const double x : s.x) {
      if (spec.log_x && x <= 0.0) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
  if (!(x_lo < x_hi)) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  const auto tx = [&](double x) {
    const double t = spec.log_x ? (std::log10(x) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo))
                                : (x - x_lo) / (x_hi - x_lo);
    return kLeft + t * (kWidth - kLeft - kRight);
  };
  const auto ty = [&](double y) {
    const double t = (y - spec.y_min) / (spec.y_max - spec.y_min);
    return kHeight - kBottom - t * (kHeight - kTop - kBottom);
  };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{3}</text>\n",
      kWidth, kHeight, (kWidth - kRight + kLeft) / 2, escape(spec.title));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>\n", kLeft, kTop,
                     kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  for (int i = 0; i <= 5; ++i) {
    const double y = spec.y_min + (spec.y_max - spec.y_min) * i / 5.0;
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.2f}</text>\n",
        kLeft - 6, ty(y) + 4, y);
  }
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    const double x = spec.log_x ? std::pow(10.0, std::log10(x_lo) + t * (std::log10(x_hi) - std::log10(x_lo)))
                                : x_lo + t * (x_hi - x_lo);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:.3g}</text>\n",
        tx(x), kHeight - kBottom + 16, x);
  }
  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
      (kWidth - kRight + kLeft) / 2, kHeight - 18, escape(spec.x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 18 {:.1f})\">{}</text>\n",
      (kHeight - kBottom + kTop) / 2, (kHeight - kBottom + kTop) / 2, escape(spec.y_label));

  double legend_y = kTop + 10;
  for (const auto& s : series) {
    if (s.points_only) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (spec.log_x && s.x[i] <= 0.0) continue;
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n", tx(s.x[i]), ty(s.y[i]), s.color);
      }
    } else {
      std::string points;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (spec.log_x && s.x[i] <= 0.0) continue;
        points += fmt::format("{:.2f},{:.2f} ", tx(s.x[i]), ty(s.y[i]));
      }
      out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n", s.color,
                         s.dashed ? " stroke-dasharray=\"4 3\"" : "", points);
    }
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n"
        "<text x=\"{4:.1f}\" y=\"{5:.1f}\" font-family=\"sans-serif\" font-size=\"11\">{6}</text>\n",
        kWidth - kRight + 10, legend_y, kWidth - kRight + 30, s.color, kWidth - kRight + 36, legend_y + 4, escape(s.label));
    legend_y += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace panelprec::cli
