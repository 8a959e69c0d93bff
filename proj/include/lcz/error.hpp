#pragma once

#include <stdexcept>
#include <string>

namespace lcz {

enum class Errc {
  ZeroCoefficient,
  NonPositiveCoefficient,
  ZeroConstantTerm,
  DomainError,
  DegreeTooSmall,
  NoPositiveRoot,
  ProfileTooSmall,
  KurtzConditionFails,
  NoConvergence,
  SeedNotBracketed,
  AmbiguousCount,
  ParseError,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lcz
