#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rissr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The sensing phase alone consumes more than the user's energy budget.
class NegativeBudget : public Error {
 public:
  NegativeBudget(std::size_t user, double e_off)
      : Error("sensing energy exceeds the budget of user " + std::to_string(user) +
              " (remaining " + std::to_string(e_off) + " J)"),
        user_(user) {}
  std::size_t user() const { return user_; }

 private:
  std::size_t user_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ZeroDistance : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter value; the message names the violated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed config text. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") +
              ": " + what),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace rissr
