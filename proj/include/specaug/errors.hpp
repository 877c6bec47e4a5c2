#pragma once

#include <stdexcept>
#include <string>

namespace specaug {

/// Bad arguments, malformed configuration, broken invariants.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem and format failures. The CLI maps this to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace specaug
