#pragma once

#include <string>
#include <vector>

namespace betadens {

/// Minimal self-contained SVG 1.1 chart: bars, polylines and markers over
/// linear or log axes. Output bytes depend only on the calls made.
class SvgFigure {
 public:
  SvgFigure(double width = 640.0, double height = 480.0);

  void set_title(std::string title) { title_ = std::move(title); }
  void set_labels(std::string x_label, std::string y_label);
  void set_x_range(double lo, double hi);
  void set_y_range(double lo, double hi);
  /// Both axes logarithmic (ranges must then be positive).
  void set_log_log(bool enabled) { log_log_ = enabled; }

  void add_bars(const std::vector<double>& lefts, const std::vector<double>& rights,
                const std::vector<double>& heights, std::string fill = "#bcd2e8");
  void add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                std::string color = "#000000", double stroke_width = 1.5, bool dashed = false);
  void add_points(const std::vector<double>& xs, const std::vector<double>& ys,
                  std::string color = "#000000", double radius = 3.0);
  void add_legend(std::string label, std::string color);

  std::string render() const;

 private:
  struct Bars {
    std::vector<double> lefts, rights, heights;
    std::string fill;
  };
  struct Line {
    std::vector<double> xs, ys;
    std::string color;
    double stroke_width;
    bool dashed;
  };
  struct Points {
    std::vector<double> xs, ys;
    std::string color;
    double radius;
  };
  struct LegendEntry {
    std::string label, color;
  };
  struct Layer {
    enum class Type { Bars, Line, Points } type;
    std::size_t index;
  };

  double px(double x) const;
  double py(double y) const;

  double width_, height_;
  double x_lo_ = 0.0, x_hi_ = 1.0, y_lo_ = 0.0, y_hi_ = 1.0;
  bool log_log_ = false;
  std::string title_, x_label_, y_label_;
  std::vector<Bars> bars_;
  std::vector<Line> lines_;
  std::vector<Points> points_;
  std::vector<Layer> layers_;
  std::vector<LegendEntry> legend_;
};

/// "%.10g" with '.' as decimal point.
std::string svg_number(double v);

}  // namespace betadens
