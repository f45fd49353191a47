#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "impactplot/percentile.hpp"

namespace impactplot {

struct ResearcherMetrics {
  std::int64_t n_papers = 0;
  std::int64_t n_highly_cited = 0;
  int proportion_highly_cited_pct = 0;  // round(100 * hc / n)
  int first_year = 0;
  int last_year = 0;
  int career_years = 0;  // inclusive publication span
  double age_normalized_highly_cited = 0.0;
  std::int64_t age_normalized_highly_cited_display = 0;
  bool operator==(const ResearcherMetrics&) const = default;
};

// Presentation rounding used throughout: half away from zero, to integer.
inline std::int64_t round_half_away(double v) { return std::llround(v); }

// Inclusive span: a single-year career counts as 1.
inline int career_years(int first_year, int last_year) {
  if (first_year > last_year)
    throw std::invalid_argument("career_years: first year after last year");
  return last_year - first_year + 1;
}

inline ResearcherMetrics summarize(const std::vector<PercentilePoint>& points) {
  if (points.empty()) throw std::invalid_argument("summarize: empty point set");
  ResearcherMetrics m;
  m.n_papers = static_cast<std::int64_t>(points.size());
  m.first_year = points.front().year;
  m.last_year = points.front().year;
  for (const PercentilePoint& p : points) {
    if (p.top10) ++m.n_highly_cited;
    m.first_year = std::min(m.first_year, p.year);
    m.last_year = std::max(m.last_year, p.year);
  }
  m.career_years = career_years(m.first_year, m.last_year);
  m.proportion_highly_cited_pct = static_cast<int>(
      round_half_away(100.0 * static_cast<double>(m.n_highly_cited) /
                      static_cast<double>(m.n_papers)));
  m.age_normalized_highly_cited =
      static_cast<double>(m.n_highly_cited) / static_cast<double>(m.career_years);
  m.age_normalized_highly_cited_display = round_half_away(m.age_normalized_highly_cited);
  return m;
}

}  // namespace impactplot
