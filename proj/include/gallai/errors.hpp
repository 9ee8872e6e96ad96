#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gallai {

// Input text could not be parsed; `line` is 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// The instance does not meet the preconditions of the requested solver or
// proposition. Carries one message per violated condition.
class hypothesis_error : public std::runtime_error {
 public:
  explicit hypothesis_error(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  explicit hypothesis_error(const std::string& violation)
      : hypothesis_error(std::vector<std::string>{violation}) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& vs) {
    std::string out = "hypothesis violation";
    for (const auto& v : vs) {
      out += "; ";
      out += v;
    }
    return out;
  }
  std::vector<std::string> violations_;
};

// A guaranteed pipeline invariant failed. Indicates a bug or an instance
// outside the guarantees the pipelines rely on.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what)
      : std::logic_error("internal invariant violated: " + what) {}
};

}  // namespace gallai
