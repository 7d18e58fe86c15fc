#pragma once

#include <stdexcept>
#include <string>

namespace tap {

// input text could not be parsed; line is 1-based
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg) : std::runtime_error(msg), line(line_) {}
};

// instance admits no augmentation (some tree edge lies on no link path)
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// an internal invariant failed; indicates a bug or an audit violation
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

// instance exceeds an exhaustive-search budget
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw InvariantError(msg);
}

}  // namespace tap
