#include "narcert/error.hpp"

namespace narcert {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kNonAdmissible: return "NonAdmissibleSignature";
    case ErrorKind::kNonIntegralGenus: return "NonIntegralGenus";
    case ErrorKind::kTableCorrupt: return "TableCorrupt";
    case ErrorKind::kOrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::kLongRelationFails: return "LongRelationFails";
    case ErrorKind::kOrderNotPreserved: return "OrderNotPreserved";
    case ErrorKind::kNotSurjective: return "NotSurjective";
    case ErrorKind::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::kNotSurfaceKernel: return "NotSurfaceKernel";
    case ErrorKind::kNotInvariant: return "NotInvariant";
    case ErrorKind::kWitnessSearchFailed: return "WitnessSearchFailed";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::int64_t detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      detail_(detail) {}

}  // namespace narcert
