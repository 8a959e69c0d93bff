#pragma once

#include <ostream>
#include <string>
#include <string_view>

namespace lcz::cli {

inline constexpr const char* kArtifactVersion = "1";

// Exit statuses. Refused means the input was fine but no certificate holds.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRefused = 2;
inline constexpr int kExitUsage = 64;

/// An angle as typed, with both readings kept so nothing is lost in transcription.
struct Angle {
  double radians = 0;
  double pi_fraction = 0;
  std::string text;
};

/// Accepts "0.75pi", "3pi/4", "pi/2", "-pi", "2.35619" (radians). Throws
/// std::invalid_argument on anything else.
Angle parse_angle(std::string_view text);

/// Runs one subcommand; the JSON report (or table/CSV) goes to `out` and
/// diagnostics to `err`. Returns one of the exit statuses above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcz::cli
