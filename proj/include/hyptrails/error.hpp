#pragma once

#include <stdexcept>
#include <string>

namespace hyptrails {

// Error categories map 1:1 onto CLI exit codes and C API status values.
enum class ErrorCode {
  io = 6,
  parse = 2,
  dimension = 3,
  degenerate = 4,
  assertion = 5,
  invalid = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::parse, w) {}
};
struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error(ErrorCode::dimension, w) {}
};
struct DegenerateHypothesis : Error {
  explicit DegenerateHypothesis(const std::string& w) : Error(ErrorCode::degenerate, w) {}
};
struct AssertionError : Error {
  explicit AssertionError(const std::string& w) : Error(ErrorCode::assertion, w) {}
};
struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(ErrorCode::invalid, w) {}
};

}  // namespace hyptrails
