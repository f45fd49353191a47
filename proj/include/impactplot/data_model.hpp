#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "impactplot/detail/csv.hpp"
#include "impactplot/errors.hpp"

namespace impactplot {

enum class Mode { precomputed, compute };
enum class Format { csv, json };

inline constexpr int year_min = 1500;
inline constexpr int year_max = 2200;

// Descending impact-factor rank r_j among the k journals of one category.
struct JournalRank {
  int rank = 0;
  int size = 0;
  bool operator==(const JournalRank&) const = default;
};

struct PublicationRecord {
  std::string id;
  int year = 0;
  std::optional<std::int64_t> citations;
  std::vector<std::string> categories;
  std::map<std::string, JournalRank> journal_ranks;
  std::optional<double> paper_percentile;
  std::optional<double> journal_percentile;

  bool has_precomputed() const {
    return paper_percentile.has_value() && journal_percentile.has_value();
  }
  // Raw data sufficient to compute both percentile kinds.
  bool is_computable() const {
    return citations.has_value() && !categories.empty() && !journal_ranks.empty();
  }

  bool operator==(const PublicationRecord&) const = default;
};

struct RecordSet {
  std::vector<PublicationRecord> records;
  Mode mode = Mode::precomputed;
  bool operator==(const RecordSet&) const = default;
};

// One field- and time-specific reference set: the citation counts of every
// corpus paper in the (category, year) cell, kept as a multiset.
struct ReferenceCell {
  std::string category;
  int year = 0;
  std::vector<std::int64_t> citation_counts;
  bool operator==(const ReferenceCell&) const = default;
};

class ReferenceCorpus {
 public:
  void add(const std::string& category, int year, std::int64_t citations) {
    ReferenceCell& cell = cells_[{category, year}];
    if (cell.citation_counts.empty()) {
      cell.category = category;
      cell.year = year;
    }
    cell.citation_counts.push_back(citations);
  }

  const ReferenceCell* find(const std::string& category, int year) const {
    auto it = cells_.find({category, year});
    return it == cells_.end() ? nullptr : &it->second;
  }

  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  const std::map<std::pair<std::string, int>, ReferenceCell>& cells() const { return cells_; }
  bool operator==(const ReferenceCorpus&) const = default;

 private:
  std::map<std::pair<std::string, int>, ReferenceCell> cells_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool parse_int(std::string_view raw, std::int64_t& out) {
  const std::string_view s = trim(raw);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_real(std::string_view raw, double& out) {
  const std::string_view s = trim(raw);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

inline void append_unique_category(std::vector<std::string>& categories, std::string_view code) {
  if (std::find(categories.begin(), categories.end(), code) == categories.end())
    categories.emplace_back(code);
}

}  // namespace detail

// Per-record schema checks; `line` is informational (0 when unknown).
inline void validate_record(const PublicationRecord& rec, std::size_t line = 0) {
  const std::string& id = rec.id;
  if (id.empty()) throw ValidationError(id, "id", "empty id", line);
  if (rec.year < year_min || rec.year > year_max)
    throw ValidationError(id, "year",
                          "year " + std::to_string(rec.year) + " outside [" +
                              std::to_string(year_min) + ", " + std::to_string(year_max) + "]",
                          line);
  if (rec.citations && *rec.citations < 0)
    throw ValidationError(id, "citations", "negative citation count", line);
  for (const auto& [code, jr] : rec.journal_ranks) {
    if (code.empty())
      throw ValidationError(id, "journal_ranks", "empty category code in rank entry", line);
    if (jr.rank < 1 || jr.size < 1 || jr.rank > jr.size)
      throw ValidationError(id, "journal_ranks",
                            "rank " + std::to_string(jr.rank) + "/" + std::to_string(jr.size) +
                                " for category '" + code + "' violates 1 <= r_j <= k",
                            line);
  }
  for (const auto& [name, value] :
       {std::pair{"paper_percentile", rec.paper_percentile},
        std::pair{"journal_percentile", rec.journal_percentile}}) {
    if (value && !(*value >= 0.0 && *value <= 100.0))
      throw ValidationError(id, name, "percentile outside [0, 100]", line);
  }
  if (rec.paper_percentile.has_value() != rec.journal_percentile.has_value()) {
    const char* missing =
        rec.paper_percentile ? "journal_percentile" : "paper_percentile";
    throw ValidationError(id, missing, "both percentiles are required when one is present", line);
  }
  if (!rec.has_precomputed() && !rec.is_computable()) {
    std::string missing;
    if (!rec.citations) missing += " citations";
    if (rec.categories.empty()) missing += " categories";
    if (rec.journal_ranks.empty()) missing += " journal_ranks";
    throw ValidationError(id, "mode", "neither precomputed nor computable: missing" + missing,
                          line);
  }
}

namespace detail {

inline RecordSet finalize_record_set(std::vector<PublicationRecord> records,
                                     const std::vector<std::size_t>& lines) {
  if (records.empty()) throw ParseError(0, "no publication records");
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 0;
    validate_record(records[i], line);
    if (!seen.insert(records[i].id).second)
      throw ValidationError(records[i].id, "id", "duplicate id", line);
  }
  bool all_precomputed = true;
  bool all_computable = true;
  for (const auto& rec : records) {
    all_precomputed = all_precomputed && rec.has_precomputed();
    all_computable = all_computable && rec.is_computable();
  }
  RecordSet set;
  set.records = std::move(records);
  if (all_precomputed) {
    set.mode = Mode::precomputed;
  } else if (all_computable) {
    set.mode = Mode::compute;
  } else {
    const PublicationRecord* compute_only = nullptr;
    const PublicationRecord* precomputed_only = nullptr;
    for (const auto& rec : set.records) {
      if (!rec.has_precomputed() && !compute_only) compute_only = &rec;
      if (!rec.is_computable() && !precomputed_only) precomputed_only = &rec;
    }
    throw ValidationError(compute_only->id, "mode",
                          "mixed modes: record '" + compute_only->id +
                              "' carries raw data only while record '" + precomputed_only->id +
                              "' carries precomputed percentiles only");
  }
  return set;
}

inline constexpr const char* publication_header[] = {
    "id", "year", "citations", "categories", "journal_ranks",
    "paper_percentile", "journal_percentile"};
inline constexpr std::size_t publication_columns = 7;

// Rows may carry extra trailing fields as long as they are empty (a common
// spreadsheet-export artifact); anything non-empty past the schema is an error.
inline void check_field_count(const csv::Row& row, std::size_t expected) {
  if (row.fields.size() < expected)
    throw ParseError(row.line, "expected " + std::to_string(expected) + " fields, got " +
                                   std::to_string(row.fields.size()));
  for (std::size_t i = expected; i < row.fields.size(); ++i) {
    if (!trim(row.fields[i]).empty())
      throw ParseError(row.line, "unexpected content in extra field " + std::to_string(i + 1));
  }
}

template <std::size_t N>
inline void check_header(const csv::Row& row, const char* const (&names)[N]) {
  check_field_count(row, N);
  for (std::size_t i = 0; i < N; ++i) {
    if (trim(row.fields[i]) != names[i]) {
      std::string expected;
      for (std::size_t k = 0; k < N; ++k) {
        if (k) expected += ',';
        expected += names[k];
      }
      throw ParseError(row.line, "bad header: expected '" + expected + "'");
    }
  }
}

inline std::map<std::string, JournalRank> parse_journal_ranks_field(std::string_view raw,
                                                                    const std::string& id,
                                                                    std::size_t line) {
  std::map<std::string, JournalRank> ranks;
  for (std::string_view entry : split(raw, ';')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const std::size_t colon = entry.rfind(':');
    if (colon == std::string_view::npos)
      throw ValidationError(id, "journal_ranks",
                            "entry '" + std::string(entry) + "' is not CODE:rj/k", line);
    const std::string code{trim(entry.substr(0, colon))};
    const std::string_view numbers = entry.substr(colon + 1);
    const std::size_t slash = numbers.find('/');
    std::int64_t rank = 0;
    std::int64_t size = 0;
    if (slash == std::string_view::npos || !parse_int(numbers.substr(0, slash), rank) ||
        !parse_int(numbers.substr(slash + 1), size))
      throw ValidationError(id, "journal_ranks",
                            "entry '" + std::string(entry) + "' is not CODE:rj/k", line);
    if (ranks.count(code))
      throw ValidationError(id, "journal_ranks", "duplicate rank entry for category '" + code + "'",
                            line);
    ranks[code] = JournalRank{static_cast<int>(rank), static_cast<int>(size)};
  }
  return ranks;
}

inline PublicationRecord record_from_csv_row(const csv::Row& row) {
  check_field_count(row, publication_columns);
  PublicationRecord rec;
  rec.id = std::string(trim(row.fields[0]));
  const std::string& id = rec.id;

  std::int64_t year = 0;
  if (!parse_int(row.fields[1], year))
    throw ValidationError(id, "year", "not an integer: '" + row.fields[1] + "'", row.line);
  rec.year = static_cast<int>(year);

  if (!trim(row.fields[2]).empty()) {
    std::int64_t citations = 0;
    if (!parse_int(row.fields[2], citations))
      throw ValidationError(id, "citations", "not an integer: '" + row.fields[2] + "'", row.line);
    rec.citations = citations;
  }

  for (std::string_view code : split(row.fields[3], ';')) {
    code = trim(code);
    if (!code.empty()) append_unique_category(rec.categories, code);
  }

  rec.journal_ranks = parse_journal_ranks_field(row.fields[4], id, row.line);

  for (const auto& [index, name, slot] :
       {std::tuple<std::size_t, const char*, std::optional<double>&>{5, "paper_percentile",
                                                                     rec.paper_percentile},
        std::tuple<std::size_t, const char*, std::optional<double>&>{6, "journal_percentile",
                                                                     rec.journal_percentile}}) {
    if (trim(row.fields[index]).empty()) continue;
    double value = 0.0;
    if (!parse_real(row.fields[index], value))
      throw ValidationError(id, name, "not a number: '" + row.fields[index] + "'", row.line);
    slot = value;
  }
  return rec;
}

inline nlohmann::json parse_json_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, e.what());  // nlohmann reports the byte position itself
  }
}

inline PublicationRecord record_from_json(const nlohmann::json& j, std::size_t index) {
  const std::string fallback = "record #" + std::to_string(index + 1);
  if (!j.is_object()) throw ValidationError(fallback, "record", "expected a JSON object");
  PublicationRecord rec;
  const std::string id_for = j.contains("id") && j["id"].is_string()
                                 ? j["id"].get<std::string>()
                                 : fallback;
  auto require = [&](const char* key, bool ok, const char* what) {
    if (!ok) throw ValidationError(id_for, key, what);
  };
  require("id", j.contains("id") && j["id"].is_string(), "missing or non-string id");
  rec.id = j["id"].get<std::string>();
  require("year", j.contains("year") && j["year"].is_number_integer(), "missing or non-integer year");
  rec.year = j["year"].get<int>();
  if (j.contains("citations") && !j["citations"].is_null()) {
    require("citations", j["citations"].is_number_integer(), "citations must be an integer");
    rec.citations = j["citations"].get<std::int64_t>();
  }
  if (j.contains("categories") && !j["categories"].is_null()) {
    require("categories", j["categories"].is_array(), "categories must be an array of strings");
    for (const auto& item : j["categories"]) {
      require("categories", item.is_string(), "categories must be an array of strings");
      const std::string code{trim(item.get<std::string>())};
      if (!code.empty()) append_unique_category(rec.categories, code);
    }
  }
  if (j.contains("journal_ranks") && !j["journal_ranks"].is_null()) {
    require("journal_ranks", j["journal_ranks"].is_object(),
            "journal_ranks must map category code to {rank, size}");
    for (const auto& [code, entry] : j["journal_ranks"].items()) {
      require("journal_ranks",
              entry.is_object() && entry.contains("rank") && entry["rank"].is_number_integer() &&
                  entry.contains("size") && entry["size"].is_number_integer(),
              "rank entry must be {\"rank\": int, \"size\": int}");
      rec.journal_ranks[code] =
          JournalRank{entry["rank"].get<int>(), entry["size"].get<int>()};
    }
  }
  for (const auto& [key, slot] :
       {std::pair<const char*, std::optional<double>&>{"paper_percentile", rec.paper_percentile},
        std::pair<const char*, std::optional<double>&>{"journal_percentile",
                                                       rec.journal_percentile}}) {
    if (j.contains(key) && !j[key].is_null()) {
      require(key, j[key].is_number(), "percentile must be a number");
      slot = j[key].get<double>();
    }
  }
  return rec;
}

}  // namespace detail

inline RecordSet parse_publications(std::string_view text, Format format) {
  std::vector<PublicationRecord> records;
  std::vector<std::size_t> lines;
  if (format == Format::csv) {
    const std::vector<csv::Row> rows = csv::parse(text);
    if (rows.empty()) throw ParseError(0, "empty input: header row required");
    detail::check_header(rows[0], detail::publication_header);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      records.push_back(detail::record_from_csv_row(rows[i]));
      lines.push_back(rows[i].line);
    }
  } else {
    const nlohmann::json doc = detail::parse_json_document(text);
    if (!doc.is_array()) throw ParseError(0, "expected a JSON array of publication records");
    std::size_t index = 0;
    for (const auto& item : doc) records.push_back(detail::record_from_json(item, index++));
  }
  return detail::finalize_record_set(std::move(records), lines);
}

inline nlohmann::json publications_to_json(const RecordSet& set) {
  nlohmann::json out = nlohmann::json::array();
  for (const PublicationRecord& rec : set.records) {
    nlohmann::json j;
    j["id"] = rec.id;
    j["year"] = rec.year;
    if (rec.citations) j["citations"] = *rec.citations;
    if (!rec.categories.empty()) j["categories"] = rec.categories;
    if (!rec.journal_ranks.empty()) {
      nlohmann::json ranks = nlohmann::json::object();
      for (const auto& [code, jr] : rec.journal_ranks)
        ranks[code] = {{"rank", jr.rank}, {"size", jr.size}};
      j["journal_ranks"] = std::move(ranks);
    }
    if (rec.paper_percentile) j["paper_percentile"] = *rec.paper_percentile;
    if (rec.journal_percentile) j["journal_percentile"] = *rec.journal_percentile;
    out.push_back(std::move(j));
  }
  return out;
}

inline std::string serialize_publications(const RecordSet& set) {
  return publications_to_json(set).dump(2) + "\n";
}

namespace detail {

inline constexpr const char* corpus_header[] = {"category", "year", "citations"};

inline void add_corpus_row(ReferenceCorpus& corpus, const std::string& category,
                           std::int64_t year, std::int64_t citations, std::size_t line) {
  const std::string where = category + ":" + std::to_string(year);
  if (category.empty()) throw ValidationError("", "category", "empty category code", line);
  if (year < year_min || year > year_max)
    throw ValidationError(where, "year", "year outside [" + std::to_string(year_min) + ", " +
                                             std::to_string(year_max) + "]",
                          line);
  if (citations < 0) throw ValidationError(where, "citations", "negative citation count", line);
  corpus.add(category, static_cast<int>(year), citations);
}

}  // namespace detail

inline ReferenceCorpus parse_reference_corpus(std::string_view text, Format format) {
  ReferenceCorpus corpus;
  if (format == Format::csv) {
    const std::vector<csv::Row> rows = csv::parse(text);
    if (rows.empty()) throw ParseError(0, "empty reference corpus");
    detail::check_header(rows[0], detail::corpus_header);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const csv::Row& row = rows[i];
      detail::check_field_count(row, 3);
      const std::string category{detail::trim(row.fields[0])};
      std::int64_t year = 0;
      if (!detail::parse_int(row.fields[1], year))
        throw ValidationError(category, "year", "not an integer: '" + row.fields[1] + "'",
                              row.line);
      std::int64_t citations = 0;
      if (!detail::parse_int(row.fields[2], citations))
        throw ValidationError(category, "citations", "not an integer: '" + row.fields[2] + "'",
                              row.line);
      detail::add_corpus_row(corpus, category, year, citations, row.line);
    }
  } else {
    const nlohmann::json doc = detail::parse_json_document(text);
    if (!doc.is_array()) throw ParseError(0, "expected a JSON array of corpus rows");
    for (const auto& item : doc) {
      if (!item.is_object() || !item.contains("category") || !item["category"].is_string() ||
          !item.contains("year") || !item["year"].is_number_integer() ||
          !item.contains("citations") || !item["citations"].is_number_integer())
        throw ValidationError("", "corpus",
                              "corpus rows must be {\"category\": str, \"year\": int, "
                              "\"citations\": int}");
      detail::add_corpus_row(corpus, item["category"].get<std::string>(),
                             item["year"].get<std::int64_t>(),
                             item["citations"].get<std::int64_t>(), 0);
    }
  }
  if (corpus.empty()) throw ParseError(0, "empty reference corpus");
  return corpus;
}

}  // namespace impactplot
