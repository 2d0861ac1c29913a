#include "nred/action.hpp"

#include "nred/error.hpp"

namespace nred {

std::string Action::label() const {
  switch (kind) {
    case ActionKind::plain:
    case ActionKind::block:
      return name;
    case ActionKind::acquire:
      return "acq(" + lock + ")";
    case ActionKind::release:
      return "rel(" + lock + ")";
    case ActionKind::syncpoint:
      return std::string(kSyncLabel);
  }
  return name;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::validation_error: return "ValidationError";
    case ErrorCode::block_symbol_missing: return "BlockSymbolMissing";
    case ErrorCode::unknown_location: return "UnknownLocation";
    case ErrorCode::action_unreachable: return "ActionUnreachable";
    case ErrorCode::inconsistent_inputs: return "InconsistentInputs";
    case ErrorCode::not_applicable: return "NotApplicable";
    case ErrorCode::alphabet_collision: return "AlphabetCollision";
    case ErrorCode::too_many_variables: return "TooManyVariables";
    case ErrorCode::depth_exceeded: return "DepthExceeded";
  }
  return "Error";
}

}  // namespace nred
