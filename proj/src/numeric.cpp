#include "symbif/numeric.hpp"

#include <limits>
#include <stdexcept>

namespace symbif {

std::string to_fraction_string(const Rational &q) {
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string joined = std::string(text.substr(0, dot)) + std::string(frac);
    if (joined == "-" || joined == "+" || joined.empty()) joined += "0";
    Integer scale = mp::pow(Integer(10), static_cast<unsigned>(frac.size()));
    return Rational(parse_integer(joined, text), scale);
  }
  return Rational(parse_integer(text, text));
}

std::int64_t to_int64(const Integer &z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer " + z.str() + " exceeds 64 bits");
  return z.convert_to<std::int64_t>();
}

}  // namespace symbif
