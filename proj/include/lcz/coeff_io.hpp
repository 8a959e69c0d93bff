#pragma once

#include "lcz/poly.hpp"
#include "lcz/precision.hpp"

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcz {

/// One coefficient as written by the user. Decimal text is kept verbatim so
/// high-precision callers can parse it without a binary round trip.
struct CoeffLiteral {
  std::string re;
  std::optional<std::string> im;
};

// Text form: one literal per line, index 0 first, '#' starts a comment.
// A line may hold two literals "re im" for a complex coefficient.
std::vector<CoeffLiteral> parse_coeff_text(std::string_view text);

// JSON form: an array whose items are numbers, decimal strings, or
// two-element [re, im] arrays.
std::vector<CoeffLiteral> parse_coeff_json(std::string_view text);

// Inline form for the command line: "1,6,5,1", "1 6 5 1" or a JSON array.
// Complex coefficients need the JSON form here.
std::vector<CoeffLiteral> parse_coeff_inline(std::string_view text);

// Reads a file in either form; JSON is detected by a leading '['.
std::vector<CoeffLiteral> read_coeff_file(const std::filesystem::path& path);

bool has_imaginary_part(const std::vector<CoeffLiteral>& lits);

CoeffSeq<double> to_double_seq(const std::vector<CoeffLiteral>& lits);
// Call inside a PrecisionScope.
CoeffSeq<HpReal> to_hp_seq(const std::vector<CoeffLiteral>& lits);
std::vector<std::complex<double>> to_complex_coeffs(const std::vector<CoeffLiteral>& lits);

double parse_double(std::string_view text);

}  // namespace lcz
