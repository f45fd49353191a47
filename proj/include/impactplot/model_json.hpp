#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "impactplot/metrics.hpp"
#include "impactplot/plot_models.hpp"

namespace impactplot {

inline nlohmann::json to_json(const SectionStats& s) {
  return {{"label", s.label}, {"count", s.count}, {"percent", s.percent}};
}

inline nlohmann::json sections_to_json(const std::vector<SectionStats>& sections) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SectionStats& s : sections) arr.push_back(to_json(s));
  return arr;
}

inline nlohmann::json to_json(const ScatterModel& model) {
  nlohmann::json points = nlohmann::json::array();
  for (const PlotPoint& p : model.points)
    points.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}, {"top10", p.top10}});
  nlohmann::json medians = nlohmann::json::array();
  for (const QuadrantMedian& q : model.quadrant_medians)
    medians.push_back({{"label", q.label}, {"x", q.x}, {"y", q.y}});
  return {{"kind", "scatter"},
          {"points", points},
          {"world_line_x", model.world_line_x},
          {"world_line_y", model.world_line_y},
          {"dataset_median_x", model.dataset_median_x},
          {"dataset_median_y", model.dataset_median_y},
          {"bisecting_line", model.bisecting_line},
          {"rows", sections_to_json(model.rows)},
          {"columns", sections_to_json(model.columns)},
          {"quadrants", sections_to_json(model.quadrants)},
          {"quadrant_medians", medians}};
}

inline nlohmann::json to_json(const DamModel& model) {
  nlohmann::json points = nlohmann::json::array();
  for (const PlotPoint& p : model.points)
    points.push_back({{"id", p.id}, {"mean", p.x}, {"diff", p.y}, {"top10", p.top10}});
  return {{"kind", "dam"},
          {"points", points},
          {"median_mean_line", model.median_mean_line},
          {"median_diff_line", model.median_diff_line},
          {"zero_diff_axis", model.zero_diff_axis},
          {"mid_mean_axis", model.mid_mean_axis},
          {"rows", sections_to_json(model.rows)},
          {"columns", sections_to_json(model.columns)},
          {"quadrants", sections_to_json(model.quadrants)}};
}

inline nlohmann::json to_json(const ResearcherMetrics& m) {
  return {{"n_papers", m.n_papers},
          {"n_highly_cited", m.n_highly_cited},
          {"proportion_highly_cited_pct", m.proportion_highly_cited_pct},
          {"first_year", m.first_year},
          {"last_year", m.last_year},
          {"career_years", m.career_years},
          {"age_normalized_highly_cited", m.age_normalized_highly_cited},
          {"age_normalized_highly_cited_display", m.age_normalized_highly_cited_display}};
}

inline std::string serialize_model(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline SectionStats section_from_json(const nlohmann::json& j) {
  SectionStats s;
  s.label = j.at("label").get<std::string>();
  s.count = j.at("count").get<std::int64_t>();
  s.percent = j.at("percent").get<int>();
  return s;
}

inline std::vector<SectionStats> sections_from_json(const nlohmann::json& arr) {
  std::vector<SectionStats> out;
  for (const auto& item : arr) out.push_back(section_from_json(item));
  return out;
}

inline ScatterModel scatter_from_json(const nlohmann::json& j) {
  if (j.at("kind").get<std::string>() != "scatter")
    throw std::invalid_argument("scatter_from_json: kind is not 'scatter'");
  ScatterModel model;
  for (const auto& p : j.at("points"))
    model.points.push_back(PlotPoint{p.at("id").get<std::string>(), p.at("x").get<double>(),
                                     p.at("y").get<double>(), p.at("top10").get<bool>()});
  model.world_line_x = j.at("world_line_x").get<double>();
  model.world_line_y = j.at("world_line_y").get<double>();
  model.dataset_median_x = j.at("dataset_median_x").get<double>();
  model.dataset_median_y = j.at("dataset_median_y").get<double>();
  model.bisecting_line = j.at("bisecting_line").get<bool>();
  model.rows = sections_from_json(j.at("rows"));
  model.columns = sections_from_json(j.at("columns"));
  model.quadrants = sections_from_json(j.at("quadrants"));
  for (const auto& q : j.at("quadrant_medians"))
    model.quadrant_medians.push_back(QuadrantMedian{q.at("label").get<std::string>(),
                                                    q.at("x").get<double>(),
                                                    q.at("y").get<double>()});
  return model;
}

inline DamModel dam_from_json(const nlohmann::json& j) {
  if (j.at("kind").get<std::string>() != "dam")
    throw std::invalid_argument("dam_from_json: kind is not 'dam'");
  DamModel model;
  for (const auto& p : j.at("points"))
    model.points.push_back(PlotPoint{p.at("id").get<std::string>(), p.at("mean").get<double>(),
                                     p.at("diff").get<double>(), p.at("top10").get<bool>()});
  model.median_mean_line = j.at("median_mean_line").get<double>();
  model.median_diff_line = j.at("median_diff_line").get<double>();
  model.zero_diff_axis = j.at("zero_diff_axis").get<double>();
  model.mid_mean_axis = j.at("mid_mean_axis").get<double>();
  model.rows = sections_from_json(j.at("rows"));
  model.columns = sections_from_json(j.at("columns"));
  model.quadrants = sections_from_json(j.at("quadrants"));
  return model;
}

}  // namespace impactplot
