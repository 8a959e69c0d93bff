#include "lcz/error.hpp"

namespace lcz {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case Errc::ZeroConstantTerm: return "ZeroConstantTerm";
    case Errc::DomainError: return "DomainError";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::ProfileTooSmall: return "ProfileTooSmall";
    case Errc::KurtzConditionFails: return "KurtzConditionFails";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SeedNotBracketed: return "SeedNotBracketed";
    case Errc::AmbiguousCount: return "AmbiguousCount";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lcz
