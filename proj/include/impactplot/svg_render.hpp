#pragma once

#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "impactplot/plot_models.hpp"

namespace impactplot {

// Visual constants for the three renderers. Defaults follow the plots'
// vocabulary: grey point markers, red accents, unfilled circles for the
// top-10% papers.
struct StyleConfig {
  double width = 720.0;
  double height = 480.0;
  double margin_left = 64.0;
  double margin_right = 168.0;
  double margin_top = 56.0;
  double margin_bottom = 56.0;
  std::string background_color = "#ffffff";
  std::string point_color = "#808080";
  std::string accent_color = "#d62728";
  std::string reference_color = "#999999";
  double marker_size = 4.0;         // half-extent of point markers, px
  double median_marker_size = 5.0;  // triangles and squares
  std::string font_family = "Helvetica, Arial, sans-serif";
  double font_size = 12.0;
  std::string dash_pattern = "6 4";

  void validate() const {
    if (!(width > 0.0 && height > 0.0))
      throw std::invalid_argument("StyleConfig: canvas dimensions must be positive");
    if (margin_left < 0.0 || margin_right < 0.0 || margin_top < 0.0 || margin_bottom < 0.0)
      throw std::invalid_argument("StyleConfig: margins must be nonnegative");
    if (margin_left + margin_right >= width || margin_top + margin_bottom >= height)
      throw std::invalid_argument("StyleConfig: margins leave no plot area");
    if (!(marker_size > 0.0) || !(median_marker_size > 0.0))
      throw std::invalid_argument("StyleConfig: marker sizes must be positive");
    if (!(font_size > 0.0)) throw std::invalid_argument("StyleConfig: font size must be positive");
  }
};

namespace svg {

// Fixed 2-decimal coordinate formatting keeps output byte-identical across
// platforms.
inline std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  if (std::strcmp(buf, "-0.00") == 0) return "0.00";
  return buf;
}

inline std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c; break;
    }
  }
  return out;
}

// Affine data-to-canvas map for one axis; px_max < px_min flips the axis.
struct AxisMap {
  double data_min = 0.0;
  double data_max = 1.0;
  double px_min = 0.0;
  double px_max = 1.0;
  double operator()(double v) const {
    return px_min + (v - data_min) / (data_max - data_min) * (px_max - px_min);
  }
};

class Doc {
 public:
  explicit Doc(const StyleConfig& style) : style_(style) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
            fmt2(style.width) + "\" height=\"" + fmt2(style.height) + "\" viewBox=\"0 0 " +
            fmt2(style.width) + " " + fmt2(style.height) + "\">\n";
    rect(0.0, 0.0, style.width, style.height, style.background_color, "background");
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width, const std::string& dash = "", const std::string& cls = "") {
    out_ += "  <line";
    cls_attr(cls);
    out_ += " x1=\"" + fmt2(x1) + "\" y1=\"" + fmt2(y1) + "\" x2=\"" + fmt2(x2) + "\" y2=\"" +
            fmt2(y2) + "\" stroke=\"" + escape(stroke) + "\" stroke-width=\"" +
            fmt2(stroke_width) + "\"";
    if (!dash.empty()) out_ += " stroke-dasharray=\"" + escape(dash) + "\"";
    out_ += "/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke,
              const std::string& cls) {
    out_ += "  <circle";
    cls_attr(cls);
    out_ += " cx=\"" + fmt2(cx) + "\" cy=\"" + fmt2(cy) + "\" r=\"" + fmt2(r) + "\" fill=\"" +
            escape(fill) + "\" stroke=\"" + escape(stroke) + "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
               const std::string& cls) {
    out_ += "  <polygon";
    cls_attr(cls);
    out_ += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += ' ';
      out_ += fmt2(pts[i].first) + "," + fmt2(pts[i].second);
    }
    out_ += "\" fill=\"" + escape(fill) + "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& cls, const std::string& stroke = "") {
    out_ += "  <rect";
    cls_attr(cls);
    out_ += " x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" width=\"" + fmt2(w) + "\" height=\"" +
            fmt2(h) + "\" fill=\"" + escape(fill) + "\"";
    if (!stroke.empty()) out_ += " stroke=\"" + escape(stroke) + "\" fill-opacity=\"0\"";
    out_ += "/>\n";
  }

  void text(double x, double y, const std::string& content, const std::string& anchor,
            const std::string& fill, const std::string& cls, bool rotated = false) {
    out_ += "  <text";
    cls_attr(cls);
    out_ += " x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" text-anchor=\"" + anchor +
            "\" font-family=\"" + escape(style_.font_family) + "\" font-size=\"" +
            fmt2(style_.font_size) + "\" fill=\"" + escape(fill) + "\"";
    if (rotated) out_ += " transform=\"rotate(-90 " + fmt2(x) + " " + fmt2(y) + ")\"";
    out_ += ">" + escape(content) + "</text>\n";
  }

  void rhombus(double cx, double cy, double s, const std::string& fill, const std::string& cls) {
    polygon({{cx, cy - s}, {cx + s, cy}, {cx, cy + s}, {cx - s, cy}}, fill, cls);
  }

  void triangle(double cx, double cy, double s, const std::string& fill, const std::string& cls) {
    polygon({{cx, cy - s}, {cx + s, cy + s}, {cx - s, cy + s}}, fill, cls);
  }

  void square(double cx, double cy, double s, const std::string& fill, const std::string& cls) {
    out_ += "  <rect";
    cls_attr(cls);
    out_ += " x=\"" + fmt2(cx - s) + "\" y=\"" + fmt2(cy - s) + "\" width=\"" + fmt2(2 * s) +
            "\" height=\"" + fmt2(2 * s) + "\" fill=\"" + escape(fill) + "\"/>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  void cls_attr(const std::string& cls) {
    if (!cls.empty()) out_ += " class=\"" + escape(cls) + "\"";
  }

  const StyleConfig& style_;
  std::string out_;
};

struct Frame {
  double left = 0.0;
  double right = 0.0;
  double top = 0.0;
  double bottom = 0.0;
};

inline Frame plot_frame(const StyleConfig& style) {
  return Frame{style.margin_left, style.width - style.margin_right, style.margin_top,
               style.height - style.margin_bottom};
}

inline void draw_x_ticks(Doc& doc, const StyleConfig& style, const Frame& f, const AxisMap& xmap,
                         const std::vector<double>& ticks) {
  for (const double t : ticks) {
    const double px = xmap(t);
    doc.line(px, f.bottom, px, f.bottom + 4.0, style.reference_color, 1.0);
    char label[32];
    std::snprintf(label, sizeof label, "%.0f", t);
    doc.text(px, f.bottom + 4.0 + style.font_size, label, "middle", style.point_color,
             "axis-label");
  }
}

inline void draw_y_ticks(Doc& doc, const StyleConfig& style, const Frame& f, const AxisMap& ymap,
                         const std::vector<double>& ticks) {
  for (const double t : ticks) {
    const double py = ymap(t);
    doc.line(f.left - 4.0, py, f.left, py, style.reference_color, 1.0);
    char label[32];
    std::snprintf(label, sizeof label, "%.0f", t);
    doc.text(f.left - 8.0, py + style.font_size * 0.35, label, "end", style.point_color,
             "axis-label");
  }
}

inline void draw_titles(Doc& doc, const StyleConfig& style, const Frame& f,
                        const std::string& x_title, const std::string& y_title) {
  doc.text((f.left + f.right) / 2.0, f.bottom + 4.0 + 2.4 * style.font_size, x_title, "middle",
           style.point_color, "axis-title");
  if (!y_title.empty())
    doc.text(f.left - 40.0, (f.top + f.bottom) / 2.0, y_title, "middle", style.point_color,
             "axis-title", true);
}

inline std::string section_label_text(const SectionStats& s) {
  return "n_" + s.label + " = " + std::to_string(s.count) + "; " + std::to_string(s.percent) + "%";
}

// Row labels sit in the right margin, column labels in the top margin, and
// quadrant labels at the inner corners of their quadrants.
inline void draw_section_labels(Doc& doc, const StyleConfig& style, const Frame& f,
                                const std::vector<SectionStats>& rows,
                                const std::vector<SectionStats>& columns,
                                const std::vector<SectionStats>& quadrants) {
  const double mid_y = (f.top + f.bottom) / 2.0;
  const double mid_x = (f.left + f.right) / 2.0;
  const double dy = style.font_size * 0.35;
  doc.text(f.right + 8.0, (f.top + mid_y) / 2.0 + dy, section_label_text(rows[0]), "start",
           style.point_color, "section-label");
  doc.text(f.right + 8.0, (mid_y + f.bottom) / 2.0 + dy, section_label_text(rows[1]), "start",
           style.point_color, "section-label");
  doc.text((mid_x + f.right) / 2.0, f.top - 8.0, section_label_text(columns[0]), "middle",
           style.point_color, "section-label");
  doc.text((f.left + mid_x) / 2.0, f.top - 8.0, section_label_text(columns[1]), "middle",
           style.point_color, "section-label");
  doc.text(f.right - 6.0, f.top + 1.3 * style.font_size, section_label_text(quadrants[0]), "end",
           style.point_color, "section-label");
  doc.text(f.left + 6.0, f.top + 1.3 * style.font_size, section_label_text(quadrants[1]), "start",
           style.point_color, "section-label");
  doc.text(f.left + 6.0, f.bottom - 6.0, section_label_text(quadrants[2]), "start",
           style.point_color, "section-label");
  doc.text(f.right - 6.0, f.bottom - 6.0, section_label_text(quadrants[3]), "end",
           style.point_color, "section-label");
}

inline void draw_point_circles(Doc& doc, const StyleConfig& style,
                               const std::vector<PlotPoint>& points, const AxisMap& xmap,
                               const AxisMap& ymap) {
  for (const PlotPoint& p : points) {
    // top-10% papers are unfilled, everything else filled
    const bool unfilled = p.top10;
    doc.circle(xmap(p.x), ymap(p.y), style.marker_size,
               unfilled ? style.background_color : style.point_color, style.point_color,
               unfilled ? "point circle unfilled" : "point circle filled");
  }
}

}  // namespace svg

// Horizontal beams per publication year: a grey rhombus per value, a red
// triangle at the year median, a red dashed line at the overall median, a grey
// line at the world average of 50. Years ascend top to bottom.
inline std::string render_beamplot(const BeamplotModel& model, const StyleConfig& style) {
  style.validate();
  if (model.year_groups.empty()) throw std::invalid_argument("render_beamplot: empty model");
  const svg::Frame f = svg::plot_frame(style);
  const svg::AxisMap xmap{0.0, 100.0, f.left, f.right};
  svg::Doc doc(style);
  doc.rect(f.left, f.top, f.right - f.left, f.bottom - f.top, "none", "frame",
           style.reference_color);
  svg::draw_x_ticks(doc, style, f, xmap, {0.0, 25.0, 50.0, 75.0, 100.0});
  const std::string x_title =
      model.metric_kind == MetricKind::paper ? "Paper percentile" : "Journal percentile";
  svg::draw_titles(doc, style, f, x_title, "");

  doc.line(xmap(model.reference_value), f.top, xmap(model.reference_value), f.bottom,
           style.reference_color, 1.0, "", "reference-line");
  doc.line(xmap(model.overall_median), f.top, xmap(model.overall_median), f.bottom,
           style.accent_color, 1.0, style.dash_pattern, "overall-median");

  const double row_height = (f.bottom - f.top) / static_cast<double>(model.year_groups.size());
  std::size_t row = 0;
  for (const auto& [year, group] : model.year_groups) {
    const double cy = f.top + row_height * (static_cast<double>(row) + 0.5);
    ++row;
    doc.text(f.left - 8.0, cy + style.font_size * 0.35, std::to_string(year), "end",
             style.point_color, "axis-label");
    for (const double v : group.values)
      doc.rhombus(xmap(v), cy, style.marker_size, style.point_color, "point rhombus");
    doc.triangle(xmap(group.median), cy, style.median_marker_size, style.accent_color,
                 "year-median triangle");
  }
  return doc.finish();
}

// Scatter of paper against journal percentiles with world-average lines at 50,
// dashed dataset medians, the bisecting line, quadrant median squares, and
// section labels.
inline std::string render_scatter(const ScatterModel& model, const StyleConfig& style) {
  style.validate();
  if (model.points.empty()) throw std::invalid_argument("render_scatter: empty model");
  const svg::Frame f = svg::plot_frame(style);
  const svg::AxisMap xmap{0.0, 100.0, f.left, f.right};
  const svg::AxisMap ymap{0.0, 100.0, f.bottom, f.top};
  svg::Doc doc(style);
  doc.rect(f.left, f.top, f.right - f.left, f.bottom - f.top, "none", "frame",
           style.reference_color);
  svg::draw_x_ticks(doc, style, f, xmap, {0.0, 25.0, 50.0, 75.0, 100.0});
  svg::draw_y_ticks(doc, style, f, ymap, {0.0, 25.0, 50.0, 75.0, 100.0});
  svg::draw_titles(doc, style, f, "Paper percentile", "Journal percentile");

  doc.line(xmap(model.world_line_x), f.top, xmap(model.world_line_x), f.bottom,
           style.accent_color, 1.0, "", "world-line");
  doc.line(f.left, ymap(model.world_line_y), f.right, ymap(model.world_line_y),
           style.accent_color, 1.0, "", "world-line");
  if (model.bisecting_line)
    doc.line(xmap(0.0), ymap(0.0), xmap(100.0), ymap(100.0), style.accent_color, 1.0, "",
             "bisecting-line");
  doc.line(xmap(model.dataset_median_x), f.top, xmap(model.dataset_median_x), f.bottom,
           style.accent_color, 1.0, style.dash_pattern, "median-line");
  doc.line(f.left, ymap(model.dataset_median_y), f.right, ymap(model.dataset_median_y),
           style.accent_color, 1.0, style.dash_pattern, "median-line");

  svg::draw_point_circles(doc, style, model.points, xmap, ymap);
  for (const QuadrantMedian& q : model.quadrant_medians)
    doc.square(xmap(q.x), ymap(q.y), style.median_marker_size, style.accent_color,
               "quadrant-median square");
  svg::draw_section_labels(doc, style, f, model.rows, model.columns, model.quadrants);
  return doc.finish();
}

// Difference-against-mean plot: mean on x (0..100), difference on y
// (-100..100), solid reference lines at diff = 0 and mean = 50, dashed lines
// at the median difference and median mean.
inline std::string render_dam(const DamModel& model, const StyleConfig& style) {
  style.validate();
  if (model.points.empty()) throw std::invalid_argument("render_dam: empty model");
  const svg::Frame f = svg::plot_frame(style);
  const svg::AxisMap xmap{0.0, 100.0, f.left, f.right};
  const svg::AxisMap ymap{-100.0, 100.0, f.bottom, f.top};
  svg::Doc doc(style);
  doc.rect(f.left, f.top, f.right - f.left, f.bottom - f.top, "none", "frame",
           style.reference_color);
  svg::draw_x_ticks(doc, style, f, xmap, {0.0, 25.0, 50.0, 75.0, 100.0});
  svg::draw_y_ticks(doc, style, f, ymap, {-100.0, -50.0, 0.0, 50.0, 100.0});
  svg::draw_titles(doc, style, f, "Mean of paper and journal percentiles",
                   "Paper minus journal percentile");

  doc.line(f.left, ymap(model.zero_diff_axis), f.right, ymap(model.zero_diff_axis),
           style.reference_color, 1.0, "", "reference-line");
  doc.line(xmap(model.mid_mean_axis), f.top, xmap(model.mid_mean_axis), f.bottom,
           style.reference_color, 1.0, "", "reference-line");
  doc.line(f.left, ymap(model.median_diff_line), f.right, ymap(model.median_diff_line),
           style.accent_color, 1.0, style.dash_pattern, "median-line");
  doc.line(xmap(model.median_mean_line), f.top, xmap(model.median_mean_line), f.bottom,
           style.accent_color, 1.0, style.dash_pattern, "median-line");

  svg::draw_point_circles(doc, style, model.points, xmap, ymap);
  svg::draw_section_labels(doc, style, f, model.rows, model.columns, model.quadrants);
  return doc.finish();
}

}  // namespace impactplot
