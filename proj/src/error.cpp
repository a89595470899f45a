#include "ultrafn/error.hpp"

namespace ultrafn {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return "config";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::IllConditioned: return "ill-conditioned-space";
    case ErrorCode::Dependency: return "dependency";
    case ErrorCode::SelectionFailure: return "selection-failure";
    case ErrorCode::NotDifferentiable: return "not-differentiable";
    case ErrorCode::Representative: return "representative";
    case ErrorCode::Order: return "order";
    case ErrorCode::ContextMismatch: return "context-mismatch";
    case ErrorCode::Lift: return "lift";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace ultrafn
