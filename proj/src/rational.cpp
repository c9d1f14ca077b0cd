#include "egal/rational.hpp"

#include <cctype>
#include <charconv>
#include <ostream>

namespace egal {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty integer in rational literal '" + std::string(whole) + "'");
  std::size_t digits_at = text[0] == '-' ? 1 : 0;
  if (digits_at >= text.size()) throw ParseError("missing digits in rational literal '" + std::string(whole) + "'");
  for (std::size_t i = digits_at; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("invalid character in rational literal '" + std::string(whole) + "'");
    }
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) throw OverflowError("rational literal out of 64-bit range");
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("invalid rational literal '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') {
    throw ParseError("denominator must be positive in '" + std::string(text) + "'");
  }
  std::int64_t den = parse_int(den_text, text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  std::string out = std::to_string(num_);
  if (den_ != 1) {
    out += '/';
    out += std::to_string(den_);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace egal
