#pragma once

#include <stdexcept>
#include <string>

namespace mmae {

// Thrown when matrix/vector dimensions do not line up. The message names
// both shapes involved.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input outside the mathematical domain of an operation (e.g. cross-entropy
// with a probability at 0 or 1).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Malformed, truncated or wrong-version artifact files.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite loss or gradient during training; carries epoch/batch context.
class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Errors reading dataset containers.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mmae
