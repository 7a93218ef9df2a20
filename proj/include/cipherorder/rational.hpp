#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cipherorder {

/// Exact arbitrary-precision rational. All probability masses are stored in this type.
using Rational = boost::multiprecision::mpq_rational;

/// 50 decimal digit binary float used for entropies, which have no rational closed form.
using Real = boost::multiprecision::mpfr_float_50;

/// Parses "3", "-2/6", "0.125" or "1e-3" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Parses whitespace-separated rationals, e.g. "2/3 1/6 1/6".
std::vector<Rational> parse_rational_vector(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& value);

std::string to_string(const Real& value, int digits = 15);

Real to_real(const Rational& value);

Rational sum(std::span<const Rational> values);

}  // namespace cipherorder
