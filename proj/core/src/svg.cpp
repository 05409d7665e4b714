#include "quaddom/svg.hpp"

#include <cmath>
#include <cstdio>

#include "quaddom/io.hpp"

namespace quaddom {

const std::vector<std::string>& default_palette() {
  static const std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                   "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
  return palette;
}

SvgFigure::SvgFigure(double x_min, double x_max, double y_min, double y_max, int width_px,
                     int height_px)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width_px),
      height_(height_px) {
  if (!(x_min_ < x_max_) || !(y_min_ < y_max_) || width_ <= 0 || height_ <= 0) {
    throw Error(Errc::InvalidArgument, "degenerate figure window");
  }
}

void SvgFigure::add_curve(const std::vector<Complex>& points, const std::string& color,
                          const std::string& label, bool dashed, double stroke_width) {
  curves_.push_back(Curve{points, color, label, dashed, stroke_width});
}

std::string SvgFigure::render() const {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
  };
  const double sx = width_ / (x_max_ - x_min_);
  const double sy = height_ / (y_max_ - y_min_);
  auto px = [&](double x) { return (x - x_min_) * sx; };
  auto py = [&](double y) { return (y_max_ - y) * sy; };  // y grows upward in data space

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(width_) +
         " " + std::to_string(height_) + "\" width=\"" + std::to_string(width_) +
         "\" height=\"" + std::to_string(height_) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Light axes through the origin when visible.
  if (x_min_ < 0.0 && x_max_ > 0.0) {
    out += "<line x1=\"" + fmt(px(0)) + "\" y1=\"0\" x2=\"" + fmt(px(0)) + "\" y2=\"" +
           std::to_string(height_) + "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
  }
  if (y_min_ < 0.0 && y_max_ > 0.0) {
    out += "<line x1=\"0\" y1=\"" + fmt(py(0)) + "\" x2=\"" + std::to_string(width_) +
           "\" y2=\"" + fmt(py(0)) + "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
  }

  for (const Curve& curve : curves_) {
    std::string path;
    bool pen_down = false;
    for (const Complex& p : curve.points) {
      const double x = p.real();
      const double y = p.imag();
      // Clip to the window with a small margin; lift the pen outside.
      const double mx = 0.05 * (x_max_ - x_min_);
      const double my = 0.05 * (y_max_ - y_min_);
      if (x < x_min_ - mx || x > x_max_ + mx || y < y_min_ - my || y > y_max_ + my ||
          !std::isfinite(x) || !std::isfinite(y)) {
        pen_down = false;
        continue;
      }
      path += (pen_down ? "L" : "M");
      path += fmt(px(x)) + " " + fmt(py(y)) + " ";
      pen_down = true;
    }
    if (path.empty()) continue;
    out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + curve.color +
           "\" stroke-width=\"" + fmt(curve.stroke_width) + "\"";
    if (curve.dashed) out += " stroke-dasharray=\"6 4\"";
    out += "/>\n";
  }

  // Legend block in the top-left corner.
  int row = 0;
  for (const Curve& curve : curves_) {
    if (curve.label.empty()) continue;
    const double y = 18.0 + 16.0 * row;
    out += "<line x1=\"12\" y1=\"" + fmt(y - 4) + "\" x2=\"34\" y2=\"" + fmt(y - 4) +
           "\" stroke=\"" + curve.color + "\" stroke-width=\"2\"";
    if (curve.dashed) out += " stroke-dasharray=\"6 4\"";
    out += "/>\n";
    out += "<text x=\"40\" y=\"" + fmt(y) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">" + curve.label +
           "</text>\n";
    ++row;
  }
  out += "</svg>\n";
  return out;
}

void SvgFigure::save(const std::string& path) const { write_text_file(path, render()); }

}  // namespace quaddom
