#include "lcz/coeff_io.hpp"

#include "json.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace lcz {

namespace {

const std::regex& decimal_pattern() {
  static const std::regex re(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  return re;
}

std::string checked_literal(std::string text) {
  if (!std::regex_match(text, decimal_pattern())) {
    throw Error(Errc::ParseError, "not a decimal literal: '" + text + "'");
  }
  if (text.front() == '+') text.erase(0, 1);
  return text;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string json_literal(const nlohmann::json& item) {
  if (item.is_string()) return checked_literal(item.get<std::string>());
  if (item.is_number_integer() || item.is_number_unsigned()) return item.dump();
  if (item.is_number_float()) {
    // nlohmann prints the shortest round-trip form, which is what was written.
    return checked_literal(item.dump());
  }
  throw Error(Errc::ParseError, "coefficient must be a number or decimal string");
}

std::vector<CoeffLiteral> require_nonempty(std::vector<CoeffLiteral> out) {
  if (out.empty()) throw Error(Errc::ParseError, "no coefficients found");
  return out;
}

}  // namespace

std::vector<CoeffLiteral> parse_coeff_text(std::string_view text) {
  std::vector<CoeffLiteral> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string re;
    std::string im;
    std::string extra;
    if (!(fields >> re)) continue;
    CoeffLiteral lit{checked_literal(re), std::nullopt};
    if (fields >> im) lit.im = checked_literal(im);
    if (fields >> extra) throw Error(Errc::ParseError, "too many fields on line: '" + line + "'");
    out.push_back(std::move(lit));
  }
  return require_nonempty(std::move(out));
}

std::vector<CoeffLiteral> parse_coeff_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_array()) throw Error(Errc::ParseError, "expected a JSON array of coefficients");
  std::vector<CoeffLiteral> out;
  for (const auto& item : doc) {
    if (item.is_array()) {
      if (item.size() != 2) throw Error(Errc::ParseError, "complex coefficient must be [re, im]");
      out.push_back({json_literal(item[0]), json_literal(item[1])});
    } else {
      out.push_back({json_literal(item), std::nullopt});
    }
  }
  return require_nonempty(std::move(out));
}

std::vector<CoeffLiteral> parse_coeff_inline(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') return parse_coeff_json(text);
  std::string spaced(text);
  for (auto& ch : spaced) {
    if (ch == ',' || ch == ';' || std::isspace(static_cast<unsigned char>(ch))) ch = '\n';
  }
  return parse_coeff_text(spaced);
}

std::vector<CoeffLiteral> read_coeff_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open coefficient file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto body = trim(text);
  if (!body.empty() && body.front() == '[') return parse_coeff_json(body);
  return parse_coeff_text(text);
}

bool has_imaginary_part(const std::vector<CoeffLiteral>& lits) {
  return std::any_of(lits.begin(), lits.end(), [](const CoeffLiteral& l) {
    return l.im && parse_double(*l.im) != 0.0;
  });
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

CoeffSeq<double> to_double_seq(const std::vector<CoeffLiteral>& lits) {
  if (has_imaginary_part(lits)) {
    throw Error(Errc::DomainError, "this operation needs real coefficients");
  }
  std::vector<double> v;
  v.reserve(lits.size());
  for (const auto& l : lits) v.push_back(parse_double(l.re));
  return CoeffSeq<double>(std::move(v));
}

CoeffSeq<HpReal> to_hp_seq(const std::vector<CoeffLiteral>& lits) {
  if (has_imaginary_part(lits)) {
    throw Error(Errc::DomainError, "this operation needs real coefficients");
  }
  std::vector<HpReal> v;
  v.reserve(lits.size());
  for (const auto& l : lits) v.push_back(parse_hp(l.re));
  return CoeffSeq<HpReal>(std::move(v));
}

std::vector<std::complex<double>> to_complex_coeffs(const std::vector<CoeffLiteral>& lits) {
  std::vector<std::complex<double>> v;
  v.reserve(lits.size());
  for (const auto& l : lits) {
    v.emplace_back(parse_double(l.re), l.im ? parse_double(*l.im) : 0.0);
  }
  return v;
}

}  // namespace lcz
