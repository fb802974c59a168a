#include "betadens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "betadens/errors.hpp"

namespace betadens {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Ticks at 1, 2, 5 multiples of a power of ten, about `target` of them.
std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / target;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  double step = base;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    step = mult * base;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  for (int e = static_cast<int>(std::floor(std::log10(lo))); e <= std::ceil(std::log10(hi)); ++e) {
    for (double mult : {1.0, 2.0, 5.0}) {
      const double t = mult * std::pow(10.0, e);
      if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
    }
  }
  return ticks;
}

}  // namespace

std::string svg_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

SvgFigure::SvgFigure(double width, double height) : width_(width), height_(height) {}

void SvgFigure::set_labels(std::string x_label, std::string y_label) {
  x_label_ = std::move(x_label);
  y_label_ = std::move(y_label);
}

void SvgFigure::set_x_range(double lo, double hi) {
  if (!(hi > lo)) throw DomainError("SvgFigure: empty x range");
  x_lo_ = lo;
  x_hi_ = hi;
}

void SvgFigure::set_y_range(double lo, double hi) {
  if (!(hi > lo)) throw DomainError("SvgFigure: empty y range");
  y_lo_ = lo;
  y_hi_ = hi;
}

void SvgFigure::add_bars(const std::vector<double>& lefts, const std::vector<double>& rights,
                         const std::vector<double>& heights, std::string fill) {
  bars_.push_back({lefts, rights, heights, std::move(fill)});
  layers_.push_back({Layer::Type::Bars, bars_.size() - 1});
}

void SvgFigure::add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                         std::string color, double stroke_width, bool dashed) {
  lines_.push_back({xs, ys, std::move(color), stroke_width, dashed});
  layers_.push_back({Layer::Type::Line, lines_.size() - 1});
}

void SvgFigure::add_points(const std::vector<double>& xs, const std::vector<double>& ys,
                           std::string color, double radius) {
  points_.push_back({xs, ys, std::move(color), radius});
  layers_.push_back({Layer::Type::Points, points_.size() - 1});
}

void SvgFigure::add_legend(std::string label, std::string color) {
  legend_.push_back({std::move(label), std::move(color)});
}

double SvgFigure::px(double x) const {
  const double plot = width_ - kMarginLeft - kMarginRight;
  const double frac = log_log_ ? std::log(x / x_lo_) / std::log(x_hi_ / x_lo_)
                               : (x - x_lo_) / (x_hi_ - x_lo_);
  return kMarginLeft + frac * plot;
}

double SvgFigure::py(double y) const {
  const double plot = height_ - kMarginTop - kMarginBottom;
  const double clamped = std::clamp(y, y_lo_, y_hi_);
  const double frac = log_log_ ? std::log(clamped / y_lo_) / std::log(y_hi_ / y_lo_)
                               : (clamped - y_lo_) / (y_hi_ - y_lo_);
  return height_ - kMarginBottom - frac * plot;
}

std::string SvgFigure::render() const {
  auto n = svg_number;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + n(width_) +
         "\" height=\"" + n(height_) + "\" viewBox=\"0 0 " + n(width_) + " " + n(height_) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + n(width_) + "\" height=\"" + n(height_) +
         "\" fill=\"#ffffff\"/>\n";

  const double left = kMarginLeft, right = width_ - kMarginRight;
  const double top = kMarginTop, bottom = height_ - kMarginBottom;
  out += "<clipPath id=\"plot\"><rect x=\"" + n(left) + "\" y=\"" + n(top) + "\" width=\"" +
         n(right - left) + "\" height=\"" + n(bottom - top) + "\"/></clipPath>\n";

  out += "<g clip-path=\"url(#plot)\">\n";
  for (const Layer& layer : layers_) {
    switch (layer.type) {
      case Layer::Type::Bars: {
        const Bars& b = bars_[layer.index];
        for (std::size_t k = 0; k < b.heights.size(); ++k) {
          const double x0 = px(b.lefts[k]);
          const double x1 = px(b.rights[k]);
          const double y1 = py(b.heights[k]);
          const double y0 = py(log_log_ ? y_lo_ : std::max(0.0, y_lo_));
          out += "<rect x=\"" + n(x0) + "\" y=\"" + n(std::min(y0, y1)) + "\" width=\"" +
                 n(x1 - x0) + "\" height=\"" + n(std::abs(y0 - y1)) + "\" fill=\"" + b.fill +
                 "\" stroke=\"#4a6d8c\" stroke-width=\"0.5\"/>\n";
        }
        break;
      }
      case Layer::Type::Line: {
        const Line& l = lines_[layer.index];
        out += "<polyline fill=\"none\" stroke=\"" + l.color + "\" stroke-width=\"" +
               n(l.stroke_width) + "\"";
        if (l.dashed) out += " stroke-dasharray=\"6 4\"";
        out += " points=\"";
        for (std::size_t k = 0; k < l.xs.size(); ++k) {
          if (k) out += ' ';
          out += n(px(l.xs[k])) + "," + n(py(l.ys[k]));
        }
        out += "\"/>\n";
        break;
      }
      case Layer::Type::Points: {
        const Points& p = points_[layer.index];
        for (std::size_t k = 0; k < p.xs.size(); ++k) {
          out += "<circle cx=\"" + n(px(p.xs[k])) + "\" cy=\"" + n(py(p.ys[k])) + "\" r=\"" +
                 n(p.radius) + "\" fill=\"" + p.color + "\"/>\n";
        }
        break;
      }
    }
  }
  out += "</g>\n";

  // Axes, ticks and labels.
  out += "<g stroke=\"#000000\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + n(left) + "\" y1=\"" + n(bottom) + "\" x2=\"" + n(right) + "\" y2=\"" +
         n(bottom) + "\"/>\n";
  out += "<line x1=\"" + n(left) + "\" y1=\"" + n(top) + "\" x2=\"" + n(left) + "\" y2=\"" +
         n(bottom) + "\"/>\n";
  out += "</g>\n";
  const auto xt = log_log_ ? log_ticks(x_lo_, x_hi_) : linear_ticks(x_lo_, x_hi_);
  const auto yt = log_log_ ? log_ticks(y_lo_, y_hi_) : linear_ticks(y_lo_, y_hi_);
  for (double t : xt) {
    const double x = px(t);
    out += "<line x1=\"" + n(x) + "\" y1=\"" + n(bottom) + "\" x2=\"" + n(x) + "\" y2=\"" +
           n(bottom + 5) + "\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + n(x) + "\" y=\"" + n(bottom + 18) + "\" text-anchor=\"middle\">" +
           svg_number(t) + "</text>\n";
  }
  for (double t : yt) {
    const double y = py(t);
    out += "<line x1=\"" + n(left - 5) + "\" y1=\"" + n(y) + "\" x2=\"" + n(left) + "\" y2=\"" +
           n(y) + "\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + n(left - 8) + "\" y=\"" + n(y + 4) + "\" text-anchor=\"end\">" +
           svg_number(t) + "</text>\n";
  }
  if (!title_.empty()) {
    out += "<text x=\"" + n(width_ / 2) + "\" y=\"" + n(top - 15) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape(title_) + "</text>\n";
  }
  if (!x_label_.empty()) {
    out += "<text x=\"" + n((left + right) / 2) + "\" y=\"" + n(height_ - 12) +
           "\" text-anchor=\"middle\">" + escape(x_label_) + "</text>\n";
  }
  if (!y_label_.empty()) {
    out += "<text x=\"16\" y=\"" + n((top + bottom) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + n((top + bottom) / 2) +
           ")\">" + escape(y_label_) + "</text>\n";
  }
  for (std::size_t k = 0; k < legend_.size(); ++k) {
    const double y = top + 14 + 16 * static_cast<double>(k);
    out += "<line x1=\"" + n(right - 150) + "\" y1=\"" + n(y - 4) + "\" x2=\"" + n(right - 130) +
           "\" y2=\"" + n(y - 4) + "\" stroke=\"" + legend_[k].color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + n(right - 125) + "\" y=\"" + n(y) + "\">" + escape(legend_[k].label) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace betadens
