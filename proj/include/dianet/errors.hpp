#pragma once

#include <stdexcept>
#include <string>

namespace dianet {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotEnabled : Error {
  using Error::Error;
};

struct SafenessViolation : Error {
  using Error::Error;
};

struct ExplorationBudgetExceeded : Error {
  using Error::Error;
};

struct UnknownAction : Error {
  using Error::Error;
};

struct InvalidRun : Error {
  using Error::Error;
};

// A lasso loop that becomes empty under observable projection. Cannot happen
// for inputs without unobservable cycles, but we refuse to silently turn an
// infinite trace into a finite one.
struct UnobservableCycle : Error {
  using Error::Error;
};

struct SharedUnobservable : Error {
  using Error::Error;
};

struct FaultNotUnobservable : Error {
  using Error::Error;
};

struct IncompleteResults : Error {
  using Error::Error;
};

// Parse errors carry a 1-based line number.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct SyntaxError : ParseError {
  using ParseError::ParseError;
};

struct UndeclaredAction : ParseError {
  using ParseError::ParseError;
};

struct DuplicateState : ParseError {
  using ParseError::ParseError;
};

}  // namespace dianet
