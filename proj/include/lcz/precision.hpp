#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <mutex>
#include <string>
#include <string_view>

namespace lcz {

using HpReal = boost::multiprecision::mpfr_float;

inline constexpr int kDoubleDigits = 15;
inline constexpr int kDefaultDigits = 50;

// MPFR's default precision in this Boost release is a process-wide static, so
// every scope takes a shared recursive lock. Nested scopes on one thread are
// fine; scopes on different threads run one after the other.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  int digits() const noexcept { return digits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned previous_;
  int digits_;
};

/// Parses a decimal literal at the current working precision.
HpReal parse_hp(std::string_view text);

/// Fixed significant-digit decimal rendering.
std::string to_decimal(const HpReal& x, int significant_digits);

/// 10^(-exponent) at the current working precision.
HpReal pow10_neg(int exponent);

}  // namespace lcz
