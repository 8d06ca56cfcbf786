#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sitebias {

enum class ErrorKind {
  config,     // invalid configuration values
  domain,     // argument outside the operation's domain
  parse,      // malformed input text
  conflict,   // duplicate id / wrong state
  not_found,
  contract,   // caller broke a precondition (e.g. mismatched binning)
  empty,      // an operation produced or received nothing to work on
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for everything the library throws on bad input.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Parse failures carry the 1-based line (or CSV row) they were found on.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::parse, message + ", line " + std::to_string(line)),
        line_(line) {}

  ParseError(std::string_view unit, std::size_t line, const std::string& message)
      : Error(ErrorKind::parse, message + ", " + std::string(unit) + " " +
                                    std::to_string(line)),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace sitebias
