#pragma once

#include <stdexcept>
#include <string>

namespace avm {

// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorCategory { Config = 2, Physics = 3, Numerical = 4, Io = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

struct ConfigError : Error {
  ConfigError(std::string key, const std::string& what)
      : Error(ErrorCategory::Config, key.empty() ? what : key + ": " + what), key(std::move(key)) {}
  std::string key;
};

struct InvalidState : Error {
  explicit InvalidState(const std::string& what) : Error(ErrorCategory::Physics, what) {}
};

struct UnsupportedSystem : Error {
  explicit UnsupportedSystem(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

struct NumericalDegeneracy : Error {
  explicit NumericalDegeneracy(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

struct IoError : Error {
  IoError(std::string path, const std::string& what)
      : Error(ErrorCategory::Io, path + ": " + what), path(std::move(path)) {}
  std::string path;
};

// A cell became nonphysical after an update. Carries the cell index.
struct FailedStep : Error {
  FailedStep(int i, int j, double time, const std::string& what)
      : Error(ErrorCategory::Physics, what), i(i), j(j), time(time) {}
  int i;
  int j;
  double time;
};

}  // namespace avm
