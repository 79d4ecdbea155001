#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mmb {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GimbalProximity : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class NoTrimFound : public Error {
 public:
  using Error::Error;
};

class WorkspaceExceeded : public Error {
 public:
  using Error::Error;
};

class Stagnation : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class EmptySeries : public Error {
 public:
  using Error::Error;
};

class DegenerateTrajectory : public Error {
 public:
  using Error::Error;
};

class InsufficientRuns : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class NumericalConditioning : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  std::string source_;
  int line_;
};

// Carries every violated invariant, not just the first one found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "validation failed";
    for (const auto& p : problems) {
      out += "\n  - ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace mmb
