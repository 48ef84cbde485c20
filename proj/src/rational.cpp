#include "qsc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qsc {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
  }
  BigInt value(std::string(text.substr(pos)));
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  const BigInt den = parse_integer(den_text, text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

}  // namespace qsc
