#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document text. line/column are 1-based; 0 when the problem is
// structural (wrong key or type) rather than lexical.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ValidationIssue;

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);

  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// Unknown variable, unknown value, or an attempt to re-instantiate a
// variable to a different value.
class EvidenceError : public Error {
 public:
  enum class Kind { UnknownVariable, UnknownValue, Contradiction };

  EvidenceError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ImpossibleEvidence : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> members);

  const std::vector<std::string>& members() const { return members_; }

 private:
  std::vector<std::string> members_;
};

}  // namespace bnet
