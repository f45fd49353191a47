#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "impactplot/data_model.hpp"
#include "impactplot/errors.hpp"
#include "impactplot/metrics.hpp"
#include "impactplot/model_json.hpp"
#include "impactplot/percentile.hpp"
#include "impactplot/plot_models.hpp"
#include "impactplot/svg_render.hpp"

namespace impactplot {

inline constexpr const char* version_string = "impactplot 0.1.0";

inline constexpr int exit_ok = 0;
inline constexpr int exit_data_error = 1;   // parse or validation failure
inline constexpr int exit_usage_error = 2;  // bad invocation

// Bad invocation discovered after argument parsing (e.g. compute-mode input
// without a reference corpus).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::filesystem::path input;
  std::filesystem::path corpus;  // empty when not given
  std::filesystem::path out_dir = ".";
  std::filesystem::path style_path;  // empty when not given
  std::string format;                // "", "csv" or "json"; "" infers from extension
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file '" + path.string() + "'");
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("cannot read file '" + path.string() + "'");
  return text;
}

// Temp-then-rename so an interrupted run never leaves a partial file behind.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write file '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw UsageError("cannot write file '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ec2;
    std::filesystem::remove(tmp, ec2);
    throw UsageError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
  }
}

inline Format infer_format(const std::filesystem::path& path, const std::string& flag) {
  if (flag == "csv") return Format::csv;
  if (flag == "json") return Format::json;
  return path.extension() == ".json" ? Format::json : Format::csv;
}

inline std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace detail

// Strict style parsing: every key must name a StyleConfig field.
inline StyleConfig style_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError(0, "style file: top level must be a JSON object");
  StyleConfig style;
  const std::map<std::string, double*> numeric_keys = {
      {"width", &style.width},
      {"height", &style.height},
      {"margin_left", &style.margin_left},
      {"margin_right", &style.margin_right},
      {"margin_top", &style.margin_top},
      {"margin_bottom", &style.margin_bottom},
      {"marker_size", &style.marker_size},
      {"median_marker_size", &style.median_marker_size},
      {"font_size", &style.font_size}};
  const std::map<std::string, std::string*> string_keys = {
      {"background_color", &style.background_color},
      {"point_color", &style.point_color},
      {"accent_color", &style.accent_color},
      {"reference_color", &style.reference_color},
      {"font_family", &style.font_family},
      {"dash_pattern", &style.dash_pattern}};
  for (const auto& [key, value] : j.items()) {
    if (const auto num = numeric_keys.find(key); num != numeric_keys.end()) {
      if (!value.is_number()) throw ParseError(0, "style key '" + key + "' must be a number");
      *num->second = value.get<double>();
    } else if (const auto str = string_keys.find(key); str != string_keys.end()) {
      if (!value.is_string()) throw ParseError(0, "style key '" + key + "' must be a string");
      *str->second = value.get<std::string>();
    } else {
      throw ParseError(0, "style file: unknown key '" + key + "'");
    }
  }
  style.validate();
  return style;
}

namespace detail {

inline nlohmann::json metrics_document(const ResearcherMetrics& m) {
  return nlohmann::json{{"metrics", to_json(m)}};
}

// Builds every output in memory, then writes the batch atomically.
inline void execute(const RunConfig& cfg) {
  StyleConfig style;
  if (!cfg.style_path.empty()) {
    const nlohmann::json j = nlohmann::json::parse(read_file(cfg.style_path));
    style = style_from_json(j);
  }

  const RecordSet set =
      parse_publications(read_file(cfg.input), infer_format(cfg.input, cfg.format));
  ReferenceCorpus corpus;
  if (!cfg.corpus.empty())
    corpus = parse_reference_corpus(read_file(cfg.corpus), infer_format(cfg.corpus, cfg.format));
  if (set.mode == Mode::compute && cfg.corpus.empty())
    throw UsageError("compute-mode input requires --corpus");

  const std::vector<PercentilePoint> points =
      resolve_points(set, cfg.corpus.empty() ? nullptr : &corpus);

  std::vector<std::pair<std::string, std::string>> files;
  const bool all = cfg.subcommand == "all";
  if (all || cfg.subcommand == "metrics")
    files.emplace_back("metrics.json", serialize_model(metrics_document(summarize(points))));
  if (all || cfg.subcommand == "beamplot") {
    files.emplace_back("beamplot_paper.svg",
                       render_beamplot(build_beamplot(points, MetricKind::paper), style));
    files.emplace_back("beamplot_journal.svg",
                       render_beamplot(build_beamplot(points, MetricKind::journal), style));
  }
  if (all || cfg.subcommand == "scatter") {
    const ScatterModel model = build_scatter(points);
    files.emplace_back("scatter.svg", render_scatter(model, style));
    files.emplace_back("scatter.json", serialize_model(to_json(model)));
  }
  if (all || cfg.subcommand == "damplot") {
    const DamModel model = build_dam(points);
    files.emplace_back("damplot.svg", render_dam(model, style));
    files.emplace_back("damplot.json", serialize_model(to_json(model)));
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + cfg.out_dir.string() + "'");
  for (const auto& [name, content] : files) write_file_atomic(cfg.out_dir / name, content);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Field- and time-normalized citation percentile plots for one researcher"};
  app.name("impactplot");
  app.set_version_flag("--version", std::string(version_string));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string input, corpus, out_dir = ".", style_path;
  app.add_option("--input", input, "Publication list (CSV or JSON)");
  app.add_option("--corpus", corpus, "Reference corpus for compute mode (CSV or JSON)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", cfg.format, "Force input format instead of inferring from extension")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--style", style_path, "Style overrides (JSON)");

  for (const auto& [name, desc] :
       std::initializer_list<std::pair<const char*, const char*>>{
           {"metrics", "Write metrics.json"},
           {"beamplot", "Write beamplot_paper.svg and beamplot_journal.svg"},
           {"scatter", "Write scatter.svg and scatter.json"},
           {"damplot", "Write damplot.svg and damplot.json"},
           {"all", "Write every output"}}) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << version_string << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << detail::one_line(e.what()) << "\n";
    return exit_usage_error;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (input.empty()) {
    err << "usage error: --input is required\n";
    return exit_usage_error;
  }
  cfg.input = input;
  cfg.corpus = corpus;
  cfg.out_dir = out_dir;
  cfg.style_path = style_path;

  try {
    detail::execute(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << detail::one_line(e.what()) << "\n";
    return exit_usage_error;
  } catch (const std::exception& e) {
    err << "error: " << detail::one_line(e.what()) << "\n";
    return exit_data_error;
  }
  return exit_ok;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace impactplot
