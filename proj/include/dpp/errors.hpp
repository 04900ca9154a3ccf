#pragma once

#include <stdexcept>
#include <string>

namespace dpp {

// Base for all toolkit errors. Subtypes map onto CLI exit codes in run().
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input. `pointer` is a JSON-pointer-style path to the
// offending field when the source is a definition file, otherwise empty.
struct ParseError : Error {
  std::string pointer;
  ParseError(std::string ptr, const std::string& msg)
      : Error(ptr.empty() ? msg : ptr + ": " + msg), pointer(std::move(ptr)) {}
};

// Contract violation inside an operation (e.g. policy undefined at a required
// history, precondition failure on a constructor).
struct ContractError : Error {
  using Error::Error;
};

// A comparison oracle answered Incomparable (or a finite action set had no
// maximum) where a total preorder was required. Carries a printable witness.
struct NotTotalError : Error {
  std::string witness;
  NotTotalError(const std::string& msg, std::string w)
      : Error(msg), witness(std::move(w)) {}
};

// An enumeration refused to run because it would exceed a configured cap.
struct LimitError : Error {
  long long limit = 0;
  long long required = 0;
  LimitError(const std::string& msg, long long lim, long long req)
      : Error(msg), limit(lim), required(req) {}
};

}  // namespace dpp
