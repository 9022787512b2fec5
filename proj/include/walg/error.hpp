#ifndef WALG_ERROR_HPP
#define WALG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace walg {

/// Raised when an operation is applied outside its mathematical domain
/// (out-of-wedge mode, missing coupling, inconsistent linear system, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries a 1-based line/column when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A JSON document that does not match the expected schema. `pointer` is the
/// JSON pointer of the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& what, std::string pointer)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace walg

#endif  // WALG_ERROR_HPP
