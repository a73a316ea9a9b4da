#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace revcoll {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  symmetry_violation,
  negative_entry,
  step_size,
  negativity_abort,
  insufficient_data,
  internal_error,
  config_invalid,
  unknown_scenario,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace revcoll
