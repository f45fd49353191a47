#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "impactplot/metrics.hpp"
#include "impactplot/percentile.hpp"

namespace impactplot {

enum class MetricKind { paper, journal };

// Median via selection; even-sized sets average the two middle values.
inline double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty set");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return (lower + upper) / 2.0;
}

struct BeamplotYearGroup {
  std::vector<double> values;  // sorted ascending
  double median = 0.0;
  bool operator==(const BeamplotYearGroup&) const = default;
};

struct BeamplotModel {
  std::map<int, BeamplotYearGroup> year_groups;
  double overall_median = 0.0;   // pooled over all years, dashed line
  double reference_value = 50.0;  // world-average line
  MetricKind metric_kind = MetricKind::paper;
  bool operator==(const BeamplotModel&) const = default;
};

struct SectionStats {
  std::string label;  // r1, r2, c1, c2, q1..q4
  std::int64_t count = 0;
  int percent = 0;  // round(100 * count / total)
  bool operator==(const SectionStats&) const = default;
};

struct PlotPoint {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  bool top10 = false;
  bool operator==(const PlotPoint&) const = default;
};

struct QuadrantMedian {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const QuadrantMedian&) const = default;
};

// Scatter of x = paper percentile against y = journal percentile; with this
// orientation a point below the bisecting line has the higher paper impact.
struct ScatterModel {
  std::vector<PlotPoint> points;
  double world_line_x = 50.0;
  double world_line_y = 50.0;
  double dataset_median_x = 0.0;  // dashed
  double dataset_median_y = 0.0;
  bool bisecting_line = true;
  std::vector<SectionStats> rows;       // split at y = 50, r1 = upper
  std::vector<SectionStats> columns;    // split at x = 50, c1 = right
  std::vector<SectionStats> quadrants;  // counterclockwise from top-right
  std::vector<QuadrantMedian> quadrant_medians;  // empty quadrants omitted
  bool operator==(const ScatterModel&) const = default;
};

// Difference-against-mean view: x = (paper + journal)/2, y = paper - journal.
struct DamModel {
  std::vector<PlotPoint> points;
  double median_diff_line = 0.0;  // dashed horizontal
  double median_mean_line = 0.0;  // dashed vertical
  double zero_diff_axis = 0.0;
  double mid_mean_axis = 50.0;
  std::vector<SectionStats> rows;       // split at diff = 0, r1 = diff >= 0
  std::vector<SectionStats> columns;    // split at mean = 50, c1 = mean >= 50
  std::vector<SectionStats> quadrants;  // q1 {>=50, >=0}, q2 {<50, >=0}, q3 {<50, <0}, q4 {>=50, <0}
  bool operator==(const DamModel&) const = default;
};

struct DamCoords {
  double mean = 0.0;
  double diff = 0.0;
  bool operator==(const DamCoords&) const = default;
};

struct PercentilePair {
  double paper = 0.0;
  double journal = 0.0;
  bool operator==(const PercentilePair&) const = default;
};

inline DamCoords to_dam(double paper_pct, double journal_pct) {
  if (!(paper_pct >= 0.0 && paper_pct <= 100.0 && journal_pct >= 0.0 && journal_pct <= 100.0))
    throw std::invalid_argument("to_dam: percentiles must lie in [0, 100]");
  return DamCoords{(paper_pct + journal_pct) / 2.0, paper_pct - journal_pct};
}

// Slack for reconstructions that leave [0, 100] by floating-point rounding only.
inline constexpr double dam_reconstruction_slack = 1e-9;

// Exact inverse of to_dam: paper = mean + diff/2, journal = mean - diff/2.
inline PercentilePair from_dam(double mean, double diff) {
  const double paper = mean + diff / 2.0;
  const double journal = mean - diff / 2.0;
  const double lo = -dam_reconstruction_slack;
  const double hi = 100.0 + dam_reconstruction_slack;
  if (!(paper >= lo && paper <= hi && journal >= lo && journal <= hi))
    throw std::invalid_argument("from_dam: reconstruction leaves [0, 100]");
  return PercentilePair{paper, journal};
}

namespace detail {

// Quadrants numbered counterclockwise from top-right (0-based index).
inline int quadrant_index(bool high_x, bool high_y) {
  if (high_y) return high_x ? 0 : 1;
  return high_x ? 3 : 2;
}

inline std::vector<SectionStats> section_stats(const std::vector<const char*>& labels,
                                               const std::vector<std::int64_t>& counts,
                                               std::int64_t total) {
  std::vector<SectionStats> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int percent = static_cast<int>(
        round_half_away(100.0 * static_cast<double>(counts[i]) / static_cast<double>(total)));
    out.push_back(SectionStats{labels[i], counts[i], percent});
  }
  return out;
}

struct SectionCounts {
  std::array<std::int64_t, 2> rows{};
  std::array<std::int64_t, 2> columns{};
  std::array<std::int64_t, 4> quadrants{};
  std::array<std::vector<double>, 4> quadrant_xs;
  std::array<std::vector<double>, 4> quadrant_ys;

  // Values exactly on a split line count toward the >= side.
  void tally(double x, double y, double x_split, double y_split) {
    const bool high_x = x >= x_split;
    const bool high_y = y >= y_split;
    ++rows[high_y ? 0 : 1];
    ++columns[high_x ? 0 : 1];
    const int q = quadrant_index(high_x, high_y);
    ++quadrants[q];
    quadrant_xs[q].push_back(x);
    quadrant_ys[q].push_back(y);
  }
};

}  // namespace detail

inline BeamplotModel build_beamplot(const std::vector<PercentilePoint>& points, MetricKind kind) {
  if (points.empty()) throw std::invalid_argument("build_beamplot: empty point set");
  BeamplotModel model;
  model.metric_kind = kind;
  std::vector<double> pooled;
  pooled.reserve(points.size());
  for (const PercentilePoint& p : points) {
    const double v = kind == MetricKind::paper ? p.paper_percentile : p.journal_percentile;
    model.year_groups[p.year].values.push_back(v);
    pooled.push_back(v);
  }
  for (auto& [year, group] : model.year_groups) {
    std::sort(group.values.begin(), group.values.end());
    group.median = median_of(group.values);
  }
  model.overall_median = median_of(std::move(pooled));
  return model;
}

inline ScatterModel build_scatter(const std::vector<PercentilePoint>& points) {
  if (points.empty()) throw std::invalid_argument("build_scatter: empty point set");
  ScatterModel model;
  model.points.reserve(points.size());
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  detail::SectionCounts counts;
  for (const PercentilePoint& p : points) {
    model.points.push_back(PlotPoint{p.id, p.paper_percentile, p.journal_percentile, p.top10});
    xs.push_back(p.paper_percentile);
    ys.push_back(p.journal_percentile);
    counts.tally(p.paper_percentile, p.journal_percentile, 50.0, 50.0);
  }
  model.dataset_median_x = median_of(std::move(xs));
  model.dataset_median_y = median_of(std::move(ys));
  const auto total = static_cast<std::int64_t>(points.size());
  model.rows = detail::section_stats({"r1", "r2"}, {counts.rows[0], counts.rows[1]}, total);
  model.columns =
      detail::section_stats({"c1", "c2"}, {counts.columns[0], counts.columns[1]}, total);
  model.quadrants = detail::section_stats(
      {"q1", "q2", "q3", "q4"},
      {counts.quadrants[0], counts.quadrants[1], counts.quadrants[2], counts.quadrants[3]}, total);
  static constexpr const char* quadrant_labels[] = {"q1", "q2", "q3", "q4"};
  for (int q = 0; q < 4; ++q) {
    if (counts.quadrant_xs[q].empty()) continue;
    // quadrant markers are component-wise medians, like every other average here
    model.quadrant_medians.push_back(QuadrantMedian{quadrant_labels[q],
                                                    median_of(counts.quadrant_xs[q]),
                                                    median_of(counts.quadrant_ys[q])});
  }
  return model;
}

inline DamModel build_dam(const std::vector<PercentilePoint>& points) {
  if (points.empty()) throw std::invalid_argument("build_dam: empty point set");
  DamModel model;
  model.points.reserve(points.size());
  std::vector<double> means, diffs;
  means.reserve(points.size());
  diffs.reserve(points.size());
  detail::SectionCounts counts;
  for (const PercentilePoint& p : points) {
    const DamCoords c = to_dam(p.paper_percentile, p.journal_percentile);
    model.points.push_back(PlotPoint{p.id, c.mean, c.diff, p.top10});
    means.push_back(c.mean);
    diffs.push_back(c.diff);
    counts.tally(c.mean, c.diff, 50.0, 0.0);
  }
  model.median_mean_line = median_of(std::move(means));
  model.median_diff_line = median_of(std::move(diffs));
  const auto total = static_cast<std::int64_t>(points.size());
  model.rows = detail::section_stats({"r1", "r2"}, {counts.rows[0], counts.rows[1]}, total);
  model.columns =
      detail::section_stats({"c1", "c2"}, {counts.columns[0], counts.columns[1]}, total);
  model.quadrants = detail::section_stats(
      {"q1", "q2", "q3", "q4"},
      {counts.quadrants[0], counts.quadrants[1], counts.quadrants[2], counts.quadrants[3]}, total);
  return model;
}

}  // namespace impactplot
