#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// A quadrature failed to reach its tolerance within the evaluation budget.
class convergence_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based, or -1 when not tied to a line.
class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& what, long line = -1)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const noexcept { return line_; }

private:
  long line_;
};

} // namespace casimir
