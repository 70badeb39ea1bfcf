#pragma once

#include <stdexcept>
#include <string>

namespace gmprof {

enum class ErrorCode {
  Parse,         // malformed input text
  Schema,        // well-formed text of the wrong shape
  Invalid,       // decoded manifold fails structural validation
  Precondition,  // operation called outside its domain
  Budget,        // search exceeded its resource budget
  Internal,      // broken internal invariant
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmprof
