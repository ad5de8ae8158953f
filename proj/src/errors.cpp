#include "cumica/errors.hpp"

namespace cumica {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularCustomWhitener: return "SingularCustomWhitener";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RunFailed: return "RunFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, int component)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      component_(component) {}

}  // namespace cumica
