#pragma once

#include <string>
#include <utility>
#include <vector>

namespace frictpair {

/// Minimal self-contained SVG line plots: inline styling, no external
/// assets. Axes are auto-scaled with a 5% margin around the data.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)),
        x_label_(std::move(x_label)),
        y_label_(std::move(y_label)) {}

  void add_polyline(std::vector<std::pair<double, double>> pts,
                    const std::string& color, double width = 1.2,
                    const std::string& label = "");
  /// Vertical band [x_lo, x_hi] hatched over the full y range, drawn under
  /// the curves (marks the sliding strip).
  void add_hatched_band(double x_lo, double x_hi);
  void add_hline(double y, const std::string& color);

  std::string render(int width_px = 720, int height_px = 520) const;
  void write(const std::string& path, int width_px = 720,
             int height_px = 520) const;

 private:
  struct Line {
    std::vector<std::pair<double, double>> pts;
    std::string color;
    double width;
    std::string label;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Line> lines_;
  std::vector<std::pair<double, double>> bands_;
  std::vector<std::pair<double, std::string>> hlines_;
};

}  // namespace frictpair
