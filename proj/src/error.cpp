#include "revcoll/error.hpp"

namespace revcoll {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::symmetry_violation: return "symmetry-violation";
    case ErrorCode::negative_entry: return "negative-entry";
    case ErrorCode::step_size: return "step-size";
    case ErrorCode::negativity_abort: return "negativity-abort";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::internal_error: return "internal-error";
    case ErrorCode::config_invalid: return "config-invalid";
    case ErrorCode::unknown_scenario: return "unknown-scenario";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace revcoll
