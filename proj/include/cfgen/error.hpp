#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfgen {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems with user-supplied data or configuration. The CLI maps these to
// exit code 1; every other Error is an internal failure (exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t line)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class StructureError : public InputError {
 public:
  using InputError::InputError;
};

class LoadError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfgen
