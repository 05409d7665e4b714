#pragma once

#include <string>
#include <vector>

#include "quaddom/numerics.hpp"

namespace quaddom {

/// Minimal self-contained SVG plotter for curve overlays: polylines in
/// data coordinates mapped to a fixed viewBox, optional dashing, a legend
/// block. No external assets.
class SvgFigure {
 public:
  /// window = {x_min, x_max, y_min, y_max} in data coordinates.
  SvgFigure(double x_min, double x_max, double y_min, double y_max, int width_px = 720,
            int height_px = 720);

  void add_curve(const std::vector<Complex>& points, const std::string& color,
                 const std::string& label = "", bool dashed = false, double stroke_width = 1.2);

  std::string render() const;
  void save(const std::string& path) const;

 private:
  struct Curve {
    std::vector<Complex> points;
    std::string color;
    std::string label;
    bool dashed;
    double stroke_width;
  };

  double x_min_, x_max_, y_min_, y_max_;
  int width_, height_;
  std::vector<Curve> curves_;
};

/// Color cycle used by the CLI figures.
const std::vector<std::string>& default_palette();

}  // namespace quaddom
