#ifndef ETANET_ERROR_HPP_
#define ETANET_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etanet {

// Invalid model/experiment configuration (bad parameter values, unknown preset).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text. line() is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Filesystem failures (unreadable input, unwritable output directory).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistic that cannot be computed on the given data (too few samples,
// degenerate histogram, empty graph).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace etanet

#endif  // ETANET_ERROR_HPP_
