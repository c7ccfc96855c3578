#include "frictpair/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace frictpair {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void SvgPlot::add_polyline(std::vector<std::pair<double, double>> pts,
                           const std::string& color, double width,
                           const std::string& label) {
  if (pts.empty()) return;
  // Plots are visual artifacts; cap the point count to keep files small.
  constexpr size_t kMaxPoints = 4000;
  if (pts.size() > kMaxPoints) {
    std::vector<std::pair<double, double>> thin;
    const size_t stride = (pts.size() + kMaxPoints - 1) / kMaxPoints;
    thin.reserve(kMaxPoints + 1);
    for (size_t i = 0; i < pts.size(); i += stride) thin.push_back(pts[i]);
    if (thin.back() != pts.back()) thin.push_back(pts.back());
    pts = std::move(thin);
  }
  lines_.push_back({std::move(pts), color, width, label});
}

void SvgPlot::add_hatched_band(double x_lo, double x_hi) {
  bands_.push_back({x_lo, x_hi});
}

void SvgPlot::add_hline(double y, const std::string& color) {
  hlines_.push_back({y, color});
}

std::string SvgPlot::render(int width_px, int height_px) const {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Line& l : lines_)
    for (const auto& [x, y] : l.pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  for (const auto& [lo, hi] : bands_) {
    xmin = std::min(xmin, lo);
    xmax = std::max(xmax, hi);
  }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  if (!std::isfinite(xmin)) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  const double mx = 0.05 * (xmax - xmin);
  const double my = 0.05 * (ymax - ymin);
  xmin -= mx;
  xmax += mx;
  ymin -= my;
  ymax += my;

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = width_px - left - right;
  const double ph = height_px - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px
    << "\" height=\"" << height_px << "\" viewBox=\"0 0 " << width_px << " "
    << height_px << "\">\n";
  o << "<defs><pattern id=\"hatch\" width=\"8\" height=\"8\" "
       "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
       "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#b0b0b0\" "
       "stroke-width=\"1\"/></pattern></defs>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& [lo, hi] : bands_)
    o << "<rect x=\"" << num(px(lo)) << "\" y=\"" << num(top) << "\" width=\""
      << num(px(hi) - px(lo)) << "\" height=\"" << num(ph)
      << "\" fill=\"url(#hatch)\" stroke=\"#909090\" stroke-width=\"0.5\"/>\n";
  for (const auto& [y, color] : hlines_)
    if (y >= ymin && y <= ymax)
      o << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(y)) << "\" x2=\""
        << num(left + pw) << "\" y2=\"" << num(py(y)) << "\" stroke=\"" << color
        << "\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>\n";

  // frame and tick labels
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
    << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const char* style =
      "font-family=\"sans-serif\" font-size=\"12\" fill=\"black\"";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    o << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(top + ph + 16)
      << "\" text-anchor=\"middle\" " << style << ">" << num(fx) << "</text>\n";
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(fy) + 4)
      << "\" text-anchor=\"end\" " << style << ">" << num(fy) << "</text>\n";
    o << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(top + ph)
      << "\" x2=\"" << num(px(fx)) << "\" y2=\"" << num(top + ph + 4)
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(left - 4) << "\" y1=\"" << num(py(fy))
      << "\" x2=\"" << num(left) << "\" y2=\"" << num(py(fy))
      << "\" stroke=\"black\"/>\n";
  }
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height_px - 10)
    << "\" text-anchor=\"middle\" " << style << ">" << x_label_ << "</text>\n";
  o << "<text x=\"16\" y=\"" << num(top + ph / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(top + ph / 2) << ")\" " << style << ">" << y_label_ << "</text>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" "
    << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
       "fill=\"black\">"
    << title_ << "</text>\n";

  for (const Line& l : lines_) {
    o << "<polyline fill=\"none\" stroke=\"" << l.color
      << "\" stroke-width=\"" << num(l.width) << "\" points=\"";
    for (const auto& [x, y] : l.pts)
      o << num(px(x)) << "," << num(py(y)) << " ";
    o << "\"/>\n";
  }
  // legend
  double ly = top + 14;
  for (const Line& l : lines_) {
    if (l.label.empty()) continue;
    o << "<line x1=\"" << num(left + pw - 110) << "\" y1=\"" << num(ly)
      << "\" x2=\"" << num(left + pw - 90) << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << l.color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(left + pw - 84) << "\" y=\"" << num(ly + 4)
      << "\" " << style << ">" << l.label << "</text>\n";
    ly += 16;
  }
  o << "</svg>\n";
  return o.str();
}

void SvgPlot::write(const std::string& path, int width_px,
                    int height_px) const {
  std::ofstream f(path);
  f << render(width_px, height_px);
}

}  // namespace frictpair
