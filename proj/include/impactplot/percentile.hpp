#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "impactplot/data_model.hpp"

namespace impactplot {

// One (paper percentile, journal percentile) pair per paper; the record every
// plot and metric consumes.
struct PercentilePoint {
  std::string id;
  int year = 0;
  double paper_percentile = 0.0;
  double journal_percentile = 0.0;
  bool top10 = false;  // paper_percentile >= 90
  bool operator==(const PercentilePoint&) const = default;
};

inline constexpr double top10_threshold = 90.0;

// (rank - 0.5) / n * 100 for ascending rank; mid-ranks allowed.
// Multiplying before dividing keeps the endpoint values exact.
inline double hazen_percentile(double rank, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("hazen_percentile: n must be at least 1");
  if (!(rank >= 0.5 && rank <= static_cast<double>(n)))
    throw std::invalid_argument("hazen_percentile: rank must lie in [0.5, n]");
  return (rank - 0.5) * 100.0 / static_cast<double>(n);
}

// Ascending mid-rank of the focal count within its cell: tied papers share the
// average of their rank positions, so equal counts always map to equal
// percentiles regardless of input order.
inline double cell_percentile(const ReferenceCell& cell, std::int64_t citations) {
  std::vector<std::int64_t> sorted = cell.citation_counts;
  std::sort(sorted.begin(), sorted.end());
  const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), citations);
  if (lo == hi)
    throw std::invalid_argument("cell_percentile: citation count " + std::to_string(citations) +
                                " not present in cell " + cell.category + ":" +
                                std::to_string(cell.year));
  const double first_rank = static_cast<double>(lo - sorted.begin()) + 1.0;
  const double last_rank = static_cast<double>(hi - sorted.begin());
  return hazen_percentile((first_rank + last_rank) / 2.0,
                          static_cast<std::int64_t>(sorted.size()));
}

// Arithmetic mean of the per-category cell percentiles. This is the one
// arithmetic mean in the toolkit; every other average is a median.
inline double paper_percentile(const PublicationRecord& record, const ReferenceCorpus& corpus) {
  if (!record.citations) throw std::invalid_argument("paper_percentile: no citation count");
  if (record.categories.empty())
    throw std::invalid_argument("paper_percentile: no subject categories");
  double sum = 0.0;
  for (const std::string& category : record.categories) {
    const ReferenceCell* cell = corpus.find(category, record.year);
    if (!cell)
      throw std::invalid_argument("paper_percentile: no reference cell for category '" + category +
                                  "', year " + std::to_string(record.year));
    sum += cell_percentile(*cell, *record.citations);
  }
  return sum / static_cast<double>(record.categories.size());
}

// Rank-normalized impact factor: (k - r_j + 1) / k * 100 with r_j the
// descending rank, so the top journal of a category scores exactly 100.
inline double rn_journal_percentile(std::int64_t r_j, std::int64_t k) {
  if (r_j < 1 || k < 1)
    throw std::invalid_argument("rn_journal_percentile: rank and category size must be positive");
  if (r_j > k) throw std::invalid_argument("rn_journal_percentile: rank exceeds category size");
  return static_cast<double>(k - r_j + 1) * 100.0 / static_cast<double>(k);
}

// Mean of the per-category rnIF values, mirroring the paper-percentile
// averaging rule for records assigned to several categories.
inline double journal_percentile(const PublicationRecord& record) {
  if (record.journal_ranks.empty())
    throw std::invalid_argument("journal_percentile: no journal rank entries");
  double sum = 0.0;
  for (const auto& [code, jr] : record.journal_ranks)
    sum += rn_journal_percentile(jr.rank, jr.size);
  return sum / static_cast<double>(record.journal_ranks.size());
}

inline PercentilePoint make_percentile_point(const std::string& id, int year,
                                             double paper_pct, double journal_pct) {
  return PercentilePoint{id, year, paper_pct, journal_pct, paper_pct >= top10_threshold};
}

// One PercentilePoint per record, in input order. Precomputed sets pass their
// stored percentiles through; compute-mode sets need a corpus covering every
// (category, year) pair. Failures are annotated with the record id.
inline std::vector<PercentilePoint> resolve_points(const RecordSet& set,
                                                   const ReferenceCorpus* corpus = nullptr) {
  if (set.mode == Mode::compute && corpus == nullptr)
    throw std::invalid_argument("resolve_points: compute-mode records need a reference corpus");
  std::vector<PercentilePoint> points;
  points.reserve(set.records.size());
  for (const PublicationRecord& rec : set.records) {
    try {
      if (set.mode == Mode::precomputed) {
        points.push_back(make_percentile_point(rec.id, rec.year, *rec.paper_percentile,
                                               *rec.journal_percentile));
      } else {
        points.push_back(make_percentile_point(rec.id, rec.year, paper_percentile(rec, *corpus),
                                               journal_percentile(rec)));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("record '" + rec.id + "': " + e.what());
    }
  }
  return points;
}

}  // namespace impactplot
