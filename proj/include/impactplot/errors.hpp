#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace impactplot {

// Syntax-level input failure. `line` is 1-based; 0 means "no line available"
// (e.g. the position is already spelled out in the message).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Schema or content failure diagnosed against one record and one field.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string record_id, std::string field, const std::string& message,
                  std::size_t line = 0)
      : std::runtime_error(compose(record_id, field, message, line)),
        record_id_(std::move(record_id)),
        field_(std::move(field)) {}

  const std::string& record_id() const { return record_id_; }
  const std::string& field() const { return field_; }

 private:
  static std::string compose(const std::string& id, const std::string& field,
                             const std::string& message, std::size_t line) {
    std::string out;
    if (!id.empty()) out += "record '" + id + "', ";
    out += "field '" + field + "': " + message;
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    return out;
  }

  std::string record_id_;
  std::string field_;
};

}  // namespace impactplot
