#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "impactplot/errors.hpp"

namespace impactplot::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> fields;
};

// RFC-4180-style CSV: quoted fields may contain commas, newlines and doubled
// quotes. Accepts LF and CRLF row endings and an optional UTF-8 BOM; blank
// lines are skipped. Throws ParseError with the offending line number.
inline std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (n >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  std::size_t line = 1;
  std::size_t row_line = 1;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;

  auto end_row = [&] {
    if (row_has_content || !fields.empty()) {
      fields.push_back(std::move(field));
      rows.push_back({row_line, std::move(fields)});
      fields = {};
    }
    field.clear();
    row_has_content = false;
  };

  while (i < n) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
          if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
            throw ParseError(line, "unexpected character after closing quote");
        }
      } else {
        if (c == '\n') ++line;
        field += c;
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError(line, "quote inside unquoted field");
        in_quotes = true;
        row_has_content = true;
        ++i;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        ++i;
        break;
      case '\r':
        if (i + 1 < n && text[i + 1] == '\n') {
          end_row();
          i += 2;
          ++line;
          row_line = line;
        } else {
          throw ParseError(line, "stray carriage return");
        }
        break;
      case '\n':
        end_row();
        ++i;
        ++line;
        row_line = line;
        break;
      default:
        field += c;
        row_has_content = true;
        ++i;
        break;
    }
  }
  if (in_quotes) throw ParseError(row_line, "unterminated quoted field");
  end_row();
  return rows;
}

}  // namespace impactplot::csv
