#pragma once

#include <stdexcept>
#include <string>

namespace mipdoor {

// Base of every error raised by the library. Callers that only need to report
// a failure can catch this; the subclasses exist so tests and the CLI can tell
// the failure modes apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedMps : public Error {
 public:
  MalformedMps(int line, const std::string& what)
      : Error("MPS line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class NotMixedBinary : public Error {
 public:
  using Error::Error;
};

class EmptyInstance : public Error {
 public:
  using Error::Error;
};

class RootNotOptimal : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NoActionsLeft : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class MismatchedInstances : public Error {
 public:
  using Error::Error;
};

}  // namespace mipdoor
