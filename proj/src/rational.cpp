#include "cipherorder/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cipherorder {

namespace {

using boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  mpz_int v{std::string(s)};
  return negative ? mpz_int(-v) : v;
}

mpz_int pow10(long e) {
  mpz_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_int num = parse_integer(text.substr(0, slash), text);
    mpz_int den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<long>(parse_integer(text.substr(e + 1), text).convert_to<long long>());
    if (exponent > 4096 || exponent < -4096)
      throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    auto ip = mantissa.substr(0, dot);
    auto fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }

  mpz_int num{digits};
  if (negative) num = -num;
  long scale = exponent - frac;
  if (scale >= 0) return Rational(mpz_int(num * pow10(scale)), mpz_int(1));
  return Rational(num, pow10(-scale));
}

std::vector<Rational> parse_rational_vector(std::string_view text) {
  std::vector<Rational> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(parse_rational(token));
  return out;
}

std::string to_string(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const Real& value, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << value;
  return out.str();
}

Real to_real(const Rational& value) { return Real(value); }

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

}  // namespace cipherorder
