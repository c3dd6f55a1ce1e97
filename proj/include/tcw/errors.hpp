// tcw — theory-combination workbench
// Exception types shared across the library.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcw {

// Raised by the formula parser and by malformed user input generally.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        d_position(position) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), d_position(0) {}

  std::size_t position() const { return d_position; }

 private:
  std::size_t d_position;
};

// Raised when a cardinality query runs past the stored prefix of a sequence
// whose continuation is known to exist but is not available.
class OracleExhausted : public std::runtime_error {
 public:
  explicit OracleExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a brute-force enumeration exceeds its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed or unresolvable theory definitions and catalog names.
class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a finite witness is requested for a formula that has no
// all-finite minimal model tuple.
class WitnessUnavailable : public std::runtime_error {
 public:
  explicit WitnessUnavailable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcw
