#include "lcz/precision.hpp"

#include "lcz/error.hpp"

#include <sstream>

namespace lcz {

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace

PrecisionScope::PrecisionScope(int digits)
    : lock_(precision_mutex()), previous_(HpReal::default_precision()), digits_(digits) {
  if (digits < kDoubleDigits) {
    throw Error(Errc::DomainError, "working precision must be at least 15 digits");
  }
  HpReal::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { HpReal::default_precision(previous_); }

HpReal parse_hp(std::string_view text) {
  try {
    return HpReal(std::string(text));
  } catch (const std::runtime_error&) {
    throw Error(Errc::ParseError, "not a decimal literal: '" + std::string(text) + "'");
  }
}

std::string to_decimal(const HpReal& x, int significant_digits) {
  std::ostringstream out;
  out.precision(significant_digits);
  out << x;
  return out.str();
}

HpReal pow10_neg(int exponent) { return pow(HpReal(10), -exponent); }

}  // namespace lcz
