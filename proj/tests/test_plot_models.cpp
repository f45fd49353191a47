#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "impactplot/plot_models.hpp"
#include "test_support.hpp"

using namespace impactplot;
using testsupport::sorted_median;

namespace {

std::vector<PercentilePoint> random_points(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> pct(0.0, 100.0);
  std::vector<PercentilePoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    points.push_back(make_percentile_point("p" + std::to_string(i), 2000 + (i % 20), pct(rng),
                                           pct(rng)));
  return points;
}

const SectionStats& by_label(const std::vector<SectionStats>& sections, std::string_view label) {
  for (const SectionStats& s : sections)
    if (s.label == label) return s;
  throw std::runtime_error("missing section " + std::string(label));
}

}  // namespace

TEST_CASE("median_of agrees with the sort-based oracle") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> size_dist(1, 200);
  std::uniform_real_distribution<double> value_dist(0.0, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> values(static_cast<std::size_t>(size_dist(rng)));
    for (auto& v : values) v = value_dist(rng);
    REQUIRE_THAT(median_of(values), Catch::Matchers::WithinAbs(sorted_median(values), 1e-12));
  }
  CHECK(median_of({7.0}) == 7.0);
  CHECK(median_of({1.0, 2.0}) == 1.5);
  CHECK_THROWS_AS(median_of({}), std::invalid_argument);
}

TEST_CASE("beamplot groups by year with sorted values and median markers") {
  const std::vector<PercentilePoint> points = {
      make_percentile_point("a", 2011, 80.0, 10.0), make_percentile_point("b", 2010, 20.0, 30.0),
      make_percentile_point("c", 2011, 40.0, 50.0), make_percentile_point("d", 2010, 90.0, 70.0),
      make_percentile_point("e", 2011, 60.0, 90.0)};
  const BeamplotModel model = build_beamplot(points, MetricKind::paper);
  REQUIRE(model.year_groups.size() == 2);
  CHECK(model.year_groups.at(2010).values == std::vector<double>{20.0, 90.0});
  CHECK(model.year_groups.at(2011).values == std::vector<double>{40.0, 60.0, 80.0});
  CHECK(model.year_groups.at(2010).median == 55.0);
  CHECK(model.year_groups.at(2011).median == 60.0);
  CHECK(model.overall_median == sorted_median({80.0, 20.0, 40.0, 90.0, 60.0}));
  CHECK(model.reference_value == 50.0);
  CHECK(model.metric_kind == MetricKind::paper);

  const BeamplotModel journal = build_beamplot(points, MetricKind::journal);
  CHECK(journal.year_groups.at(2010).values == std::vector<double>{30.0, 70.0});
  CHECK(journal.overall_median == 50.0);

  CHECK_THROWS_AS(build_beamplot({}, MetricKind::paper), std::invalid_argument);
}

TEST_CASE("beamplot model is invariant under input permutation") {
  std::mt19937 rng(99);
  auto points = random_points(rng, 60);
  const BeamplotModel base = build_beamplot(points, MetricKind::paper);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(points.begin(), points.end(), rng);
    CHECK(build_beamplot(points, MetricKind::paper) == base);
  }
}

TEST_CASE("scatter sections count every point exactly once") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto points = random_points(rng, 1 + trial * 3);
    const ScatterModel model = build_scatter(points);
    const auto n = static_cast<std::int64_t>(points.size());

    std::int64_t r1 = 0, c1 = 0;
    std::array<std::int64_t, 4> quadrants{};
    for (const auto& p : points) {
      if (p.journal_percentile >= 50.0) ++r1;
      if (p.paper_percentile >= 50.0) ++c1;
      const bool hx = p.paper_percentile >= 50.0;
      const bool hy = p.journal_percentile >= 50.0;
      ++quadrants[static_cast<std::size_t>(hy ? (hx ? 0 : 1) : (hx ? 3 : 2))];
    }
    CHECK(by_label(model.rows, "r1").count == r1);
    CHECK(by_label(model.rows, "r2").count == n - r1);
    CHECK(by_label(model.columns, "c1").count == c1);
    CHECK(by_label(model.columns, "c2").count == n - c1);
    for (int q = 0; q < 4; ++q)
      CHECK(by_label(model.quadrants, "q" + std::to_string(q + 1)).count ==
            quadrants[static_cast<std::size_t>(q)]);
    for (const auto& sections : {model.rows, model.columns, model.quadrants}) {
      std::int64_t sum = 0;
      for (const auto& s : sections) {
        sum += s.count;
        CHECK(s.percent == static_cast<int>(round_half_away(100.0 * static_cast<double>(s.count) /
                                                            static_cast<double>(n))));
      }
      CHECK(sum == n);
    }
  }
}

TEST_CASE("scatter fixture reproduces the published row statistics") {
  const ScatterModel model = build_scatter(testsupport::fixture_99());
  CHECK(by_label(model.rows, "r1") == SectionStats{"r1", 89, 90});
  CHECK(by_label(model.rows, "r2") == SectionStats{"r2", 10, 10});
}

TEST_CASE("points exactly on a split line belong to the upper section") {
  const std::vector<PercentilePoint> points = {
      make_percentile_point("on-both", 2010, 50.0, 50.0),
      make_percentile_point("low", 2010, 49.999, 49.999)};
  const ScatterModel model = build_scatter(points);
  CHECK(by_label(model.rows, "r1").count == 1);
  CHECK(by_label(model.columns, "c1").count == 1);
  CHECK(by_label(model.quadrants, "q1").count == 1);
  CHECK(by_label(model.quadrants, "q3").count == 1);
}

TEST_CASE("scatter quadrants are numbered counterclockwise from the top right") {
  const std::vector<PercentilePoint> points = {
      make_percentile_point("ne", 2010, 80.0, 80.0), make_percentile_point("nw", 2010, 20.0, 80.0),
      make_percentile_point("sw", 2010, 20.0, 20.0), make_percentile_point("se", 2010, 80.0, 20.0)};
  const ScatterModel model = build_scatter(points);
  for (const auto& q : model.quadrants) CHECK(q.count == 1);
  REQUIRE(model.quadrant_medians.size() == 4);
  CHECK(model.quadrant_medians[0] == QuadrantMedian{"q1", 80.0, 80.0});
  CHECK(model.quadrant_medians[1] == QuadrantMedian{"q2", 20.0, 80.0});
  CHECK(model.quadrant_medians[2] == QuadrantMedian{"q3", 20.0, 20.0});
  CHECK(model.quadrant_medians[3] == QuadrantMedian{"q4", 80.0, 20.0});
}

TEST_CASE("quadrant medians are component-wise and absent for empty quadrants") {
  const std::vector<PercentilePoint> points = {
      make_percentile_point("a", 2010, 60.0, 70.0), make_percentile_point("b", 2010, 90.0, 55.0),
      make_percentile_point("c", 2010, 70.0, 95.0)};
  const ScatterModel model = build_scatter(points);
  REQUIRE(model.quadrant_medians.size() == 1);
  CHECK(model.quadrant_medians[0].label == "q1");
  CHECK(model.quadrant_medians[0].x == sorted_median({60.0, 90.0, 70.0}));
  CHECK(model.quadrant_medians[0].y == sorted_median({70.0, 55.0, 95.0}));
}

TEST_CASE("scatter model carries medians and fixed reference lines") {
  std::mt19937 rng(13);
  const auto points = random_points(rng, 41);
  const ScatterModel model = build_scatter(points);
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.paper_percentile);
    ys.push_back(p.journal_percentile);
  }
  CHECK_THAT(model.dataset_median_x, Catch::Matchers::WithinAbs(sorted_median(xs), 1e-12));
  CHECK_THAT(model.dataset_median_y, Catch::Matchers::WithinAbs(sorted_median(ys), 1e-12));
  CHECK(model.world_line_x == 50.0);
  CHECK(model.world_line_y == 50.0);
  CHECK(model.bisecting_line);
  REQUIRE(model.points.size() == points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(model.points[i].id == points[i].id);
    CHECK(model.points[i].x == points[i].paper_percentile);
    CHECK(model.points[i].y == points[i].journal_percentile);
    CHECK(model.points[i].top10 == points[i].top10);
  }
}

TEST_CASE("difference-against-mean transform and its inverse cancel") {
  CHECK(to_dam(80.0, 20.0) == DamCoords{50.0, 60.0});
  CHECK(from_dam(50.0, 60.0) == PercentilePair{80.0, 20.0});
  std::mt19937 rng(20260816);
  std::uniform_real_distribution<double> pct(0.0, 100.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const double p = pct(rng);
    const double j = pct(rng);
    const DamCoords c = to_dam(p, j);
    const PercentilePair back = from_dam(c.mean, c.diff);
    REQUIRE_THAT(back.paper, Catch::Matchers::WithinAbs(p, 1e-9));
    REQUIRE_THAT(back.journal, Catch::Matchers::WithinAbs(j, 1e-9));
  }
}

TEST_CASE("dam transform rejects out-of-range inputs but allows rounding slack") {
  CHECK_THROWS_AS(to_dam(100.5, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(to_dam(50.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(from_dam(80.0, 60.0), std::invalid_argument);   // paper would be 110
  CHECK_THROWS_AS(from_dam(20.0, -60.0), std::invalid_argument);  // paper would be -10
  CHECK(from_dam(100.0, 1e-10).paper > 100.0);                    // inside the slack band
  CHECK_THROWS_AS(from_dam(100.0, 3e-9), std::invalid_argument);
}

TEST_CASE("dam model splits at zero difference and the mid mean") {
  const std::vector<PercentilePoint> points = {
      make_percentile_point("gt", 2010, 80.0, 20.0),   // mean 50, diff 60: on both >= sides
      make_percentile_point("eq", 2010, 30.0, 30.0),   // mean 30, diff 0: diff boundary
      make_percentile_point("lt", 2010, 10.0, 50.0)};  // mean 30, diff -40
  const DamModel model = build_dam(points);
  REQUIRE(model.points.size() == 3);
  CHECK(model.points[0].x == 50.0);
  CHECK(model.points[0].y == 60.0);
  CHECK(by_label(model.rows, "r1").count == 2);
  CHECK(by_label(model.rows, "r2").count == 1);
  CHECK(by_label(model.columns, "c1").count == 1);
  CHECK(by_label(model.columns, "c2").count == 2);
  CHECK(by_label(model.quadrants, "q1").count == 1);
  CHECK(by_label(model.quadrants, "q2").count == 1);
  CHECK(by_label(model.quadrants, "q3").count == 1);
  CHECK(by_label(model.quadrants, "q4").count == 0);
  CHECK(model.median_mean_line == sorted_median({50.0, 30.0, 30.0}));
  CHECK(model.median_diff_line == sorted_median({60.0, 0.0, -40.0}));
  CHECK(model.zero_diff_axis == 0.0);
  CHECK(model.mid_mean_axis == 50.0);
}

TEST_CASE("dam sections count every point exactly once") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto points = random_points(rng, 2 + trial * 5);
    const DamModel model = build_dam(points);
    const auto n = static_cast<std::int64_t>(points.size());
    for (const auto& sections : {model.rows, model.columns, model.quadrants}) {
      std::int64_t sum = 0;
      for (const auto& s : sections) sum += s.count;
      CHECK(sum == n);
    }
  }
}

TEST_CASE("dam points respect the geometric bounds and the sign law") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    const auto points = random_points(rng, 3 + trial * 7);
    const DamModel model = build_dam(points);
    REQUIRE(model.points.size() == points.size());
    std::int64_t mean_high = 0, diff_high = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const PlotPoint& d = model.points[i];
      REQUIRE(d.x >= 0.0);
      REQUIRE(d.x <= 100.0);
      REQUIRE(d.y >= -100.0);
      REQUIRE(d.y <= 100.0);
      REQUIRE(std::abs(d.y) <= 2.0 * std::min(d.x, 100.0 - d.x) + 1e-9);
      // the difference is positive exactly for points below the scatter bisecting line
      REQUIRE((d.y > 0.0) == (points[i].paper_percentile > points[i].journal_percentile));
      REQUIRE((d.y == 0.0) == (points[i].paper_percentile == points[i].journal_percentile));
      if (d.x >= 50.0) ++mean_high;
      if (d.y >= 0.0) ++diff_high;
    }
    // q1 and q4 make up the high-mean half, q1 and q2 the nonnegative-diff half
    CHECK(by_label(model.quadrants, "q1").count + by_label(model.quadrants, "q4").count ==
          mean_high);
    CHECK(by_label(model.quadrants, "q1").count + by_label(model.quadrants, "q2").count ==
          diff_high);

    std::int64_t above = 0, below = 0, left = 0, right = 0;
    for (const auto& d : model.points) {
      if (d.y > model.median_diff_line) ++above;
      if (d.y < model.median_diff_line) ++below;
      if (d.x > model.median_mean_line) ++right;
      if (d.x < model.median_mean_line) ++left;
    }
    const auto n = static_cast<std::int64_t>(points.size());
    CHECK(2 * above <= n);
    CHECK(2 * below <= n);
    CHECK(2 * right <= n);
    CHECK(2 * left <= n);
  }
}

TEST_CASE("scatter and dam statistics ignore input order") {
  std::mt19937 rng(321);
  auto points = random_points(rng, 57);
  const ScatterModel s0 = build_scatter(points);
  const DamModel d0 = build_dam(points);
  const auto sorted_by_id = [](std::vector<PlotPoint> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const PlotPoint& a, const PlotPoint& b) { return a.id < b.id; });
    return pts;
  };
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(points.begin(), points.end(), rng);
    ScatterModel s = build_scatter(points);
    DamModel d = build_dam(points);
    CHECK(sorted_by_id(s.points) == sorted_by_id(s0.points));
    CHECK(sorted_by_id(d.points) == sorted_by_id(d0.points));
    // the point collection keeps input order; everything else must match exactly
    s.points = s0.points;
    d.points = d0.points;
    CHECK(s == s0);
    CHECK(d == d0);
  }
}

TEST_CASE("a degenerate dataset occupies a single section") {
  const std::vector<PercentilePoint> points(5, make_percentile_point("same", 2010, 60.0, 40.0));
  const DamModel model = build_dam(points);
  CHECK(by_label(model.quadrants, "q1") == SectionStats{"q1", 5, 100});
  CHECK(by_label(model.quadrants, "q2") == SectionStats{"q2", 0, 0});
  CHECK(by_label(model.quadrants, "q3") == SectionStats{"q3", 0, 0});
  CHECK(by_label(model.quadrants, "q4") == SectionStats{"q4", 0, 0});
  CHECK(by_label(model.rows, "r1").count == 5);
  CHECK(by_label(model.columns, "c1").count == 5);
  CHECK(model.median_mean_line == 50.0);
  CHECK(model.median_diff_line == 20.0);

  const BeamplotModel beam = build_beamplot({make_percentile_point("a", 2010, 50.0, 50.0),
                                             make_percentile_point("b", 2011, 50.0, 50.0)},
                                            MetricKind::paper);
  CHECK(beam.overall_median == beam.reference_value);
  for (const auto& [year, group] : beam.year_groups) CHECK(group.median == 50.0);
}
