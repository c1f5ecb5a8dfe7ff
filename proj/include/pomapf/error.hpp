#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pomapf {

// Stable numeric codes; foreign bindings surface these unchanged.
enum class ErrorCode : int {
  kValidation = 1,
  kGenerationFailure = 2,
  kPlacementFailure = 3,
  kEpisodeOver = 4,
  kLengthMismatch = 5,
  kEpisodeNotFinished = 6,
  kInactiveAgent = 7,
  kIndexOutOfRange = 8,
  kCellBlocked = 9,
  kParse = 10,
  kBadCharacter = 11,
  kRaggedRows = 12,
  kName = 13,
  kIo = 14,
  kInvalidAction = 15,
  kInvalidArgument = 16,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pomapf
