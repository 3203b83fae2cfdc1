#pragma once

#include <stdexcept>
#include <string>

namespace ellconn {

// Violated precondition or rejected input; CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure (a check that must hold for well-formed data).
class CheckError : public std::runtime_error {
 public:
  explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ellconn
