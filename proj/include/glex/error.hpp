#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glex {

// Base of every domain error. kind() is the stable name used on the wire
// ({"error": kind, "detail": what}).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define GLEX_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& detail) : Error(#Name, detail) {} \
  };

GLEX_DEFINE_ERROR(DuplicateVariable)
GLEX_DEFINE_ERROR(UnknownType)
GLEX_DEFINE_ERROR(DuplicateType)
GLEX_DEFINE_ERROR(InvalidArgument)
GLEX_DEFINE_ERROR(BadPath)
GLEX_DEFINE_ERROR(DuplicateKey)
GLEX_DEFINE_ERROR(NotFound)
GLEX_DEFINE_ERROR(Forbidden)
GLEX_DEFINE_ERROR(Unauthorized)
GLEX_DEFINE_ERROR(AuthFailed)
GLEX_DEFINE_ERROR(BadFilter)
GLEX_DEFINE_ERROR(BadRequest)
GLEX_DEFINE_ERROR(Conflict)
GLEX_DEFINE_ERROR(UnknownWord)
GLEX_DEFINE_ERROR(BadTemplate)
GLEX_DEFINE_ERROR(ConnectFailed)

#undef GLEX_DEFINE_ERROR

// Malformed predicate text; offset is the byte index of the offending input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error("SyntaxError",
              message + " at offset " + std::to_string(offset)),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

// Malformed lexicon document; line is 1-based (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

struct Problem {
  std::string key;  // "lemma#sense", "type:<name>" or empty
  std::string path;
  std::string message;

  bool operator==(const Problem&) const = default;
};

struct ValidationReport {
  std::vector<Problem> problems;

  bool ok() const noexcept { return problems.empty(); }

  void add(std::string key, std::string path, std::string message) {
    problems.push_back({std::move(key), std::move(path), std::move(message)});
  }

  void append(const ValidationReport& other) {
    problems.insert(problems.end(), other.problems.begin(),
                    other.problems.end());
  }

  std::string summary() const {
    std::string out;
    for (const auto& p : problems) {
      if (!out.empty()) out += "; ";
      if (!p.key.empty()) out += p.key + " ";
      out += p.path + ": " + p.message;
    }
    return out;
  }
};

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport report)
      : Error("ValidationFailed", report.summary()),
        report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// No relation between head and modifier; reasons holds one line per probe.
class NoRelation : public Error {
 public:
  NoRelation(const std::string& head, const std::string& modifier,
             std::vector<std::string> reasons)
      : Error("NoRelation", "no relation detected between '" + head +
                                "' and '" + modifier + "'"),
        head_(head),
        modifier_(modifier),
        reasons_(std::move(reasons)) {}

  const std::string& head() const noexcept { return head_; }
  const std::string& modifier() const noexcept { return modifier_; }
  const std::vector<std::string>& reasons() const noexcept { return reasons_; }

 private:
  std::string head_;
  std::string modifier_;
  std::vector<std::string> reasons_;
};

}  // namespace glex
