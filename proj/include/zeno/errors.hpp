#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Bad input caught before any compute starts (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values appeared during propagation (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace zeno
