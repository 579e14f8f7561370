#pragma once

#include <stdexcept>
#include <string>

namespace substoch {

/// Input violates a domain contract (not substochastic, not doubly stochastic, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed text: numbers, matrix documents, decomposition documents.
class ParseError : public ValidationError {
 public:
  explicit ParseError(const std::string& what) : ValidationError(what) {}
};

/// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace substoch
