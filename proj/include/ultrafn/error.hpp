#pragma once

#include <stdexcept>
#include <string>

namespace ultrafn {

enum class ErrorCode {
  Config = 1,
  Domain,
  IllConditioned,
  Dependency,
  SelectionFailure,
  NotDifferentiable,
  Representative,
  Order,
  ContextMismatch,
  Lift,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it onto a status value without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ultrafn
