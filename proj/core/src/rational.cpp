#include "montyq/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace montyq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

bool is_power_of_two(BigInt n) {
  if (n <= 0) return false;
  while (n % 2 == 0) n /= 2;
  return n == 1;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)), s);
    BigInt den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
      int_part.remove_prefix(1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, s);
    BigInt digits = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, s);
    if (!frac_part.empty() && (frac_part.front() == '-' || frac_part.front() == '+'))
      throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Rational value = Rational(whole) + Rational(digits, scale);
    if (!is_power_of_two(denominator_of(value)))
      throw std::invalid_argument("decimal '" + std::string(s) +
                                  "' is not exactly representable; use fraction form such as 1/12");
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& r) {
  if (denominator_of(r) == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace montyq
