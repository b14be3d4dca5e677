#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oradmit {

// Configuration failed the model invariants. Carries every violation found,
// not just the first, so a CLI run can report them all at once.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) {
      out += "\n  - ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

// Malformed configuration text; message includes the offending line number.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A size guard refused to run an operation that would exhaust memory or
// never finish (state-space enumeration, action materialization).
class GuardError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oradmit
